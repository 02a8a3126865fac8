//! Exact multivariate polynomials over ℚ, the input grammar, and algebra
//! presentations `ℚ[X]/I`.

mod parse;
mod presentation;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::trop::format_rational;
use crate::Rational;

pub use parse::{parse_document, parse_poly, parse_ring, parse_weight, Document};
pub use presentation::{CoeffValuation, Presentation};

/// Exponents of a monomial, one per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&k| k as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Extends with zeros at the end.
    pub fn extend_to(&self, n: usize) -> ExponentVector {
        let mut e = self.0.clone();
        e.resize(n, 0);
        ExponentVector(e)
    }
}

/// Graded-lex comparison used by the printer: total degree first, then the
/// exponent of the first variable, and so on.
pub fn grlex_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

/// Ordered variable names of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    vars: Arc<Vec<String>>,
}

impl RingContext {
    /// Builds a ring from variable names, rejecting duplicates.
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable {
                    name: v.clone(),
                    line: 0,
                    column: 0,
                });
            }
        }
        Ok(RingContext { vars: Arc::new(vars) })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// This ring with extra variables appended.
    pub fn extended(&self, extra: &[&str]) -> Result<RingContext> {
        let mut vars = (*self.vars).clone();
        vars.extend(extra.iter().map(|s| s.to_string()));
        RingContext::new(vars)
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {};", self.vars.join(" "))
    }
}

/// A polynomial with exact rational coefficients. Zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingContext,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &RingContext) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &RingContext, c: Rational) -> Self {
        Self::monomial(ring, ExponentVector::zeros(ring.dim()), c)
    }

    pub fn one(ring: &RingContext) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &RingContext, i: usize) -> Self {
        Self::monomial(ring, ExponentVector::unit(ring.dim(), i), Rational::one())
    }

    pub fn monomial(ring: &RingContext, e: ExponentVector, c: Rational) -> Self {
        assert_eq!(e.len(), ring.dim(), "exponent length must match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(ring: &RingContext, terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.dim(), "exponent length must match ring");
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_constant)
    }

    /// `Some(e)` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(ExponentVector::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &ExponentVector, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.add(e), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Substitutes `images[i]` for the i-th variable. All images must share
    /// one target ring.
    pub fn substitute(&self, images: &[Polynomial], target: &RingContext) -> Result<Polynomial> {
        if images.len() != self.ring.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.dim(),
                found: images.len(),
            });
        }
        if images.iter().any(|p| p.ring() != target) {
            return Err(Error::RingMismatch);
        }
        // powers[i][k] = images[i]^k, built lazily up to the largest exponent
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &k) in e.exps().iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Re-embeds into a ring whose variables extend this ring's variables.
    pub fn embed(&self, target: &RingContext) -> Result<Polynomial> {
        if target.dim() < self.ring.dim() || target.vars()[..self.ring.dim()] != self.ring.vars()[..] {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.extend_to(target.dim()), c.clone()))
                .collect(),
        })
    }

    /// Terms in printing order: graded-lex, largest first.
    pub fn sorted_terms(&self) -> Vec<(&ExponentVector, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex_cmp(b.0, a.0));
        ts
    }

    /// Divides by the coefficient of the graded-lex largest term.
    pub fn monic(&self) -> Polynomial {
        match self.sorted_terms().first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Homogenizes with a new first variable `h`.
    pub fn homogenize(&self, target: &RingContext) -> Polynomial {
        debug_assert_eq!(target.dim(), self.ring.dim() + 1);
        let d = self.degree().unwrap_or(0);
        Polynomial {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = Vec::with_capacity(e.len() + 1);
                    v.push((d - e.degree()) as u32);
                    v.extend_from_slice(e.exps());
                    (ExponentVector(v), c.clone())
                })
                .collect(),
        }
    }

    /// Sets the first variable to 1.
    pub fn dehomogenize(&self, target: &RingContext) -> Polynomial {
        debug_assert_eq!(target.dim() + 1, self.ring.dim());
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|(e, c)| (ExponentVector(e.exps()[1..].to_vec()), c.clone())),
        )
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &RingContext, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.exps().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.vars()[i])?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if e.is_constant() {
                f.write_str(&format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                write_monomial(f, &self.ring, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> RingContext {
        RingContext::new(vars.iter().copied()).unwrap()
    }

    fn p(r: &RingContext, s: &str) -> Polynomial {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(p(&r, "x+1").mul(&p(&r, "x-1")).unwrap(), p(&r, "x^2-1"));
        let f = p(&r, "3*x*y - 1/2");
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
        assert_eq!(p(&r, "x+y").mul(&p(&r, "x+y")).unwrap(), p(&r, "x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = ring(&["x", "y"]);
        let b = ring(&["x", "z"]);
        assert_eq!(
            Polynomial::var(&a, 0).add(&Polynomial::var(&b, 0)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn printer_is_graded_lex() {
        let r = ring(&["x", "y"]);
        assert_eq!(p(&r, "1 - 3*y + x^2*y").to_string(), "x^2*y - 3*y + 1");
        assert_eq!(p(&r, "-y + x - 3/2").to_string(), "x - y - 3/2");
        assert_eq!(p(&r, "x - x").to_string(), "0");
    }

    #[test]
    fn substitution_and_homogenization() {
        let r = ring(&["x", "y"]);
        let t = ring(&["t"]);
        let f = p(&r, "x*y + y");
        let images = [p(&t, "t"), p(&t, "t^2")];
        assert_eq!(f.substitute(&images, &t).unwrap(), p(&t, "t^3 + t^2"));

        let h = ring(&["h", "x", "y"]);
        let g = p(&r, "x^2 + y + 1");
        let gh = g.homogenize(&h);
        assert_eq!(gh, p(&h, "x^2 + h*y + h^2"));
        assert!(gh.is_homogeneous());
        assert_eq!(gh.dehomogenize(&r), g);
    }

    fn arb_poly(r: RingContext) -> impl Strategy<Value = Polynomial> {
        let n = r.dim();
        prop::collection::vec((prop::collection::vec(0u32..4, n), -5i64..6, 1i64..4), 0..6).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, a, b)| (ExponentVector::new(e), Rational::new(a.into(), b.into()))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 128,
            rng_seed: proptest::test_runner::RngSeed::Fixed(1),
            failure_persistence: None,
            ..ProptestConfig::default()
        })]

        #[test]
        fn print_parse_round_trip(f in arb_poly(ring(&["x", "y", "z"]))) {
            let back = parse_poly(f.ring(), &f.to_string()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn ring_axioms(
            f in arb_poly(ring(&["x", "y"])),
            g in arb_poly(ring(&["x", "y"])),
            h in arb_poly(ring(&["x", "y"])),
        ) {
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(
                f.mul(&g).unwrap().mul(&h).unwrap(),
                f.mul(&g.mul(&h).unwrap()).unwrap()
            );
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
            prop_assert!(f.sub(&f).unwrap().is_zero());
        }
    }
}
