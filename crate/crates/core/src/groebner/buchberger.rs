use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial, RingContext};
use crate::Rational;

/// Reduction steps allowed under an order that is not a well-order.
pub const DIVISION_STEP_LIMIT: usize = 200_000;

/// Terms sorted ascending under an order; the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    terms: Vec<(ExponentVector, Rational)>,
}

impl SortedPoly {
    pub(crate) fn from_poly(f: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SortedPoly { terms }
    }

    pub(crate) fn to_poly(&self, ring: &RingContext) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lead(&self) -> Option<&(ExponentVector, Rational)> {
        self.terms.last()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            let inv = c.recip();
            for t in &mut self.terms {
                t.1 *= &inv;
            }
        }
    }

    /// `self − c·x^m·g`, preserving sortedness (orders are multiplicative).
    fn sub_scaled(&self, c: &Rational, m: &ExponentVector, g: &SortedPoly, order: &MonomialOrder) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |j: usize| (g.terms[j].0.add(m), -(c * &g.terms[j].1));
        while i < self.terms.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let (ge, gc) = shifted(j);
            if i == self.terms.len() {
                out.push((ge, gc));
                j += 1;
                continue;
            }
            match order.cmp(&self.terms[i].0, &ge) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((ge, gc));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + gc;
                    if !s.is_zero() {
                        out.push((ge, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SortedPoly { terms: out }
    }
}

/// Full reduction of `f` by `basis`: the remainder has no term divisible by
/// any leading monomial. With `limit`, gives up after that many steps.
pub(crate) fn reduce(
    f: SortedPoly,
    basis: &[SortedPoly],
    order: &MonomialOrder,
    limit: Option<usize>,
) -> Result<SortedPoly> {
    let mut p = f;
    let mut rem: Vec<(ExponentVector, Rational)> = Vec::new();
    let mut steps = 0usize;
    while let Some((le, lc)) = p.terms.last().cloned() {
        let divisor = basis.iter().find(|g| g.lead().is_some_and(|(ge, _)| ge.divides(&le)));
        match divisor {
            Some(g) => {
                let (ge, gc) = g.lead().unwrap();
                let m = le.checked_sub(ge).expect("divides");
                let c = &lc / gc;
                p = p.sub_scaled(&c, &m, g, order);
                steps += 1;
                if let Some(limit) = limit {
                    if steps > limit {
                        return Err(Error::DivisionDiverged { steps: limit });
                    }
                }
            }
            None => {
                rem.push(p.terms.pop().unwrap());
            }
        }
    }
    rem.reverse();
    Ok(SortedPoly { terms: rem })
}

fn step_limit(order: &MonomialOrder) -> Option<usize> {
    if order.is_well_order() {
        None
    } else {
        Some(DIVISION_STEP_LIMIT)
    }
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly, order: &MonomialOrder) -> SortedPoly {
    let (fe, fc) = f.lead().unwrap();
    let (ge, gc) = g.lead().unwrap();
    let l = fe.lcm(ge);
    let mf = l.checked_sub(fe).unwrap();
    let mg = l.checked_sub(ge).unwrap();
    let zero = SortedPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&-fc.recip(), &mf, f, order);
    a.sub_scaled(&gc.recip(), &mg, g, order)
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingContext,
    order: MonomialOrder,
    gens: Vec<Polynomial>,
    sorted: Vec<SortedPoly>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.sorted.iter().map(|g| g.lead().unwrap().0.clone()).collect()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let r = reduce(
            SortedPoly::from_poly(f, &self.order),
            &self.sorted,
            &self.order,
            step_limit(&self.order),
        )?;
        Ok(r.to_poly(&self.ring))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Free-function form of [`GroebnerBasis::normal_form`].
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

/// Reduced Gröbner basis of `⟨gens⟩`. Pairs are processed by smallest lcm
/// (normal strategy) with the product and chain criteria; the output is
/// monic and sorted by leading monomial, largest first.
pub fn buchberger(ring: &RingContext, gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    if order.dim() != ring.dim() {
        return Err(Error::DimensionMismatch {
            expected: ring.dim(),
            found: order.dim(),
        });
    }
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let limit = step_limit(order);
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |p: SortedPoly, basis: &mut Vec<SortedPoly>, pairs: &mut BTreeSet<(usize, usize)>| {
        let k = basis.len();
        for i in 0..k {
            pairs.insert((i, k));
        }
        basis.push(p);
    };

    for g in gens {
        let r = reduce(SortedPoly::from_poly(g, order), &basis, order, limit)?;
        if !r.is_zero() {
            let mut r = r;
            r.make_monic();
            add(r, &mut basis, &mut pairs);
        }
    }

    let lcm_of =
        |basis: &[SortedPoly], (i, j): (usize, usize)| basis[i].lead().unwrap().0.lcm(&basis[j].lead().unwrap().0);

    while !pairs.is_empty() {
        if basis.iter().any(|g| g.lead().unwrap().0.is_constant()) {
            break;
        }
        let next = *pairs
            .iter()
            .min_by(|&&a, &&b| {
                order
                    .cmp(&lcm_of(&basis, a), &lcm_of(&basis, b))
                    .then_with(|| a.cmp(&b))
            })
            .unwrap();
        pairs.remove(&next);
        let (i, j) = next;
        let (ei, ej) = (&basis[i].lead().unwrap().0, &basis[j].lead().unwrap().0);
        if ei.is_coprime(ej) {
            continue;
        }
        let l = ei.lcm(ej);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().unwrap().0.divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce(s, &basis, order, limit)?;
        if !r.is_zero() {
            r.make_monic();
            add(r, &mut basis, &mut pairs);
        }
    }

    // minimalize, then interreduce
    if let Some(unit) = basis.iter().find(|g| g.lead().unwrap().0.is_constant()) {
        // a constant leading term with other terms only happens when the
        // order is not a well-order; such an order cannot be used here
        if unit.terms.len() > 1 {
            return Err(Error::UnitLeading(unit.to_poly(ring).to_string()));
        }
        basis = vec![unit.clone()];
    }
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let gi = &g.lead().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hj = &h.lead().unwrap().0;
            j != i && hj.divides(gi) && (hj != gi || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (le, lc) = minimal[i].lead().unwrap().clone();
        let mut tail = minimal[i].clone();
        tail.terms.pop();
        let mut r = reduce(tail, &others, order, limit)?;
        r.terms.push((le, lc));
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&b.lead().unwrap().0, &a.lead().unwrap().0));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        gens: reduced.iter().map(|g| g.to_poly(ring)).collect(),
        sorted: reduced,
        reduced: true,
    })
}

/// Leading monomial of a nonzero polynomial under `order`.
pub fn leading_monomial(f: &Polynomial, order: &MonomialOrder) -> Option<ExponentVector> {
    f.terms().map(|(e, _)| e).max_by(|a, b| order.cmp(a, b)).cloned()
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

/// `true` when the reduced bases are equal as sets of polynomials.
pub fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.ring == b.ring && a.gens.len() == b.gens.len() && a.gens.iter().all(|g| b.gens.contains(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::trop::WeightVector;
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> RingContext {
        RingContext::new(vars.iter().copied()).unwrap()
    }

    fn polys(r: &RingContext, ps: &[&str]) -> Vec<Polynomial> {
        ps.iter().map(|p| parse_poly(r, p).unwrap()).collect()
    }

    fn strs(gb: &GroebnerBasis) -> Vec<String> {
        gb.gens().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x^2 - y"]), &MonomialOrder::lex(2)).unwrap();
        let nf = |s: &str| gb.normal_form(&parse_poly(&r, s).unwrap()).unwrap().to_string();
        assert_eq!(nf("x^2"), "y");
        assert_eq!(nf("x^3*y - x*y^2"), "0");
        assert_eq!(nf("y"), "y");
        assert_eq!(nf("x^3 + 1"), "x*y + 1");
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x", "y"]);
        for order in [MonomialOrder::lex(2), MonomialOrder::grevlex(2)] {
            let gb = buchberger(&r, &polys(&r, &["2*x + 2*y + 2"]), &order).unwrap();
            assert_eq!(strs(&gb), ["x + y + 1"]);
        }
        let gb = buchberger(&r, &polys(&r, &["x*y - 1", "7"]), &MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(strs(&gb), ["1"]);
        assert!(gb.is_unit());

        let r = ring(&["x", "y", "z"]);
        let gb = buchberger(&r, &polys(&r, &["x^2 - y", "x^3 - z"]), &MonomialOrder::lex(3)).unwrap();
        assert_eq!(strs(&gb), ["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]);
    }

    #[test]
    fn deterministic_across_generator_order() {
        let r = ring(&["x", "y", "z"]);
        let o = MonomialOrder::grevlex(3);
        let a = buchberger(&r, &polys(&r, &["x^2 - y", "x^3 - z"]), &o).unwrap();
        let b = buchberger(&r, &polys(&r, &["x^3 - z", "x^2 - y", "x*y - z"]), &o).unwrap();
        assert_eq!(a, b);
        assert!(same_ideal(&a, &b));
    }

    #[test]
    fn non_well_order_division_is_capped() {
        let r = ring(&["x"]);
        let o = MonomialOrder::weighted(&WeightVector::from_ints(&[-1])).unwrap();
        // leading term 1 of x - 1 under a negative weight: x -> x^2 -> ... never ends
        let g = SortedPoly::from_poly(&parse_poly(&r, "1 - x").unwrap(), &o);
        let f = SortedPoly::from_poly(&parse_poly(&r, "x").unwrap(), &o);
        assert_eq!(
            reduce(f, &[g], &o, Some(50)).map(|_| ()),
            Err(Error::DivisionDiverged { steps: 50 })
        );
    }

    fn arb_poly(r: RingContext) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..4), 1..5).prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, c)| (ExponentVector::new(e), Rational::from_integer(c.into()))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 64,
            rng_seed: proptest::test_runner::RngSeed::Fixed(3),
            failure_persistence: None,
            ..ProptestConfig::default()
        })]

        #[test]
        fn normal_form_is_idempotent_and_weight_monotone(
            gens in prop::collection::vec(arb_poly(ring(&["x", "y", "z"])), 1..3),
            f in arb_poly(ring(&["x", "y", "z"])),
            w in prop::collection::vec(0i64..3, 3),
        ) {
            let r = ring(&["x", "y", "z"]);
            let w = WeightVector::from_ints(&w);
            let gb = buchberger(&r, &gens, &MonomialOrder::weighted(&w).unwrap()).unwrap();
            let nf = gb.normal_form(&f).unwrap();
            prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
            prop_assert!(gb.contains(&f.sub(&nf).unwrap()).unwrap());
            let top = |p: &Polynomial| p.terms().map(|(e, _)| w.dot(e)).max();
            if !nf.is_zero() {
                prop_assert!(top(&nf) <= top(&f));
            }
            for g in &gens {
                prop_assert!(gb.contains(g).unwrap());
            }
        }
    }
}
