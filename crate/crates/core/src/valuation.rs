//! Candidate valuations on `A = K[X]/I`.
//!
//! A weight `w` induces `v_w(f) = max{w·e : e ∈ supp NF(f)}` where `NF` is
//! taken against a `w`-refined Gröbner basis of `I`. This is always a
//! quasi-valuation; whether it is a valuation is what [`check_axioms`] probes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, contains_monomial, initial_ideal, GroebnerBasis, MonomialOrder};
use crate::poly::{Polynomial, Presentation};
use crate::sample::sample_pairs;
use crate::trop::{trop_add, trop_mul, TropicalValue, WeightVector};
use crate::Rational;

#[derive(Clone, Debug)]
enum Source {
    Weight {
        w: WeightVector,
        gb: GroebnerBasis,
    },
    Pullback {
        images: Vec<Polynomial>,
        base: Arc<CandidateValuation>,
    },
    Sum(Arc<CandidateValuation>, Arc<CandidateValuation>),
    Scaled(Arc<CandidateValuation>, Rational),
}

/// A function `A → ℚ ∪ {−∞}` that may or may not satisfy the valuation axioms.
#[derive(Clone, Debug)]
pub struct CandidateValuation {
    presentation: Presentation,
    source: Source,
    // keyed by grevlex normal form, so equal elements of A share a key
    overrides: BTreeMap<String, (Polynomial, TropicalValue)>,
    canonical: GroebnerBasis,
    notes: Vec<String>,
}

fn grevlex_basis(p: &Presentation) -> Result<GroebnerBasis> {
    buchberger(p.ring(), p.ideal_gens(), &MonomialOrder::grevlex(p.ring().dim()))
}

/// The valuation induced by `w` through normal forms.
pub fn make_weight_valuation(p: &Presentation, w: &WeightVector) -> Result<CandidateValuation> {
    p.check_weight(w)?;
    let gb = buchberger(p.ring(), p.ideal_gens(), &MonomialOrder::weighted(w)?)?;
    Ok(CandidateValuation {
        presentation: p.clone(),
        source: Source::Weight { w: w.clone(), gb },
        overrides: BTreeMap::new(),
        canonical: grevlex_basis(p)?,
        notes: Vec::new(),
    })
}

impl CandidateValuation {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The inducing weight, for weight-induced valuations.
    pub fn weight(&self) -> Option<&WeightVector> {
        match &self.source {
            Source::Weight { w, .. } => Some(w),
            _ => None,
        }
    }

    pub fn is_weight_induced(&self) -> bool {
        self.weight().is_some() && self.overrides.is_empty()
    }

    /// Assumptions recorded during construction (e.g. asserted injectivity).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    fn canonical_key(&self, f: &Polynomial) -> Result<(String, Polynomial)> {
        let nf = self.canonical.normal_form(f)?;
        Ok((nf.to_string(), nf))
    }

    /// Tabulates `value` for the class of `f`; consulted before the source.
    pub fn with_override(mut self, f: &Polynomial, value: TropicalValue) -> Result<Self> {
        let (key, nf) = self.canonical_key(f)?;
        self.overrides.insert(key, (nf, value));
        Ok(self)
    }

    pub fn overrides(&self) -> impl Iterator<Item = (&Polynomial, &TropicalValue)> {
        self.overrides.values().map(|(p, v)| (p, v))
    }

    pub fn evaluate(&self, f: &Polynomial) -> Result<TropicalValue> {
        if f.ring() != self.presentation.ring() {
            return Err(Error::RingMismatch);
        }
        if !self.overrides.is_empty() {
            let (key, _) = self.canonical_key(f)?;
            if let Some((_, v)) = self.overrides.get(&key) {
                return Ok(v.clone());
            }
        }
        self.evaluate_source(f)
    }

    fn evaluate_source(&self, f: &Polynomial) -> Result<TropicalValue> {
        match &self.source {
            Source::Weight { w, gb } => {
                let nf = gb.normal_form(f)?;
                Ok(nf
                    .terms()
                    .map(|(e, _)| TropicalValue::Finite(w.dot(e)))
                    .fold(TropicalValue::Bottom, |a, b| trop_add(&a, &b)))
            }
            Source::Pullback { images, base } => base.evaluate(&f.substitute(images, base.presentation.ring())?),
            Source::Sum(a, b) => Ok(trop_mul(&a.evaluate(f)?, &b.evaluate(f)?)),
            Source::Scaled(a, r) => Ok(a.evaluate(f)?.scale(r)),
        }
    }

    /// Pointwise `⊗` of two valuations on the same presentation. Two weight
    /// valuations add their weights.
    pub fn sum(&self, other: &CandidateValuation) -> Result<CandidateValuation> {
        if self.presentation != other.presentation {
            return Err(Error::RingMismatch);
        }
        if let (true, true) = (self.is_weight_induced(), other.is_weight_induced()) {
            let w = self.weight().unwrap().add(other.weight().unwrap())?;
            return make_weight_valuation(&self.presentation, &w);
        }
        Ok(self.derived(Source::Sum(Arc::new(self.clone()), Arc::new(other.clone()))))
    }

    /// `r·v` for `r > 0`.
    pub fn scaled(&self, r: &Rational) -> Result<CandidateValuation> {
        if r <= &Rational::from_integer(0.into()) {
            return Err(Error::NonPositiveScale(crate::trop::format_rational(r)));
        }
        if self.is_weight_induced() {
            return make_weight_valuation(&self.presentation, &self.weight().unwrap().scale(r));
        }
        Ok(self.derived(Source::Scaled(Arc::new(self.clone()), r.clone())))
    }

    fn derived(&self, source: Source) -> CandidateValuation {
        CandidateValuation {
            presentation: self.presentation.clone(),
            source,
            overrides: BTreeMap::new(),
            canonical: self.canonical.clone(),
            notes: self.notes.clone(),
        }
    }

    /// The first variable whose value differs from the inducing weight, if
    /// any. A weight is realized when every variable is already reduced.
    pub fn weight_mismatch(&self) -> Result<Option<(usize, TropicalValue)>> {
        let Some(w) = self.weight() else {
            return Ok(None);
        };
        let ring = self.presentation.ring();
        for i in 0..ring.dim() {
            let v = self.evaluate(&Polynomial::var(ring, i))?;
            if v != TropicalValue::Finite(w.weights()[i].clone()) {
                return Ok(Some((i, v)));
            }
        }
        Ok(None)
    }

    /// Exact when the structure settles every pair: weight valuations on a
    /// free algebra take top terms, and top terms multiply.
    fn axioms_are_structural(&self) -> bool {
        self.presentation.is_free() && self.is_weight_induced()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valuation,
    QuasiValuationOnly,
    /// Subadditivity or submultiplicativity failed: not even a quasi-valuation.
    Invalid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valuation => "valuation",
            Verdict::QuasiValuationOnly => "quasi_valuation_only",
            Verdict::Invalid => "invalid",
        })
    }
}

/// A pair `(a, b)` and the two sides of the violated relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure<E> {
    pub a: E,
    pub b: E,
    pub lhs: TropicalValue,
    pub rhs: TropicalValue,
}

#[derive(Clone, Debug)]
pub struct AxiomReport<E> {
    pub pairs_checked: usize,
    /// `v(ab) ≠ v(a) ⊗ v(b)`: lhs `v(ab)`, rhs `v(a) ⊗ v(b)`.
    pub multiplicativity_failures: Vec<Failure<E>>,
    /// `v(a+b) < v(a) ⊕ v(b)` with `v(a) ≠ v(b)`: lhs `v(a+b)`, rhs `v(a) ⊕ v(b)`.
    pub p1_failures: Vec<Failure<E>>,
    /// `v(a+b) > v(a) ⊕ v(b)`.
    pub subadditivity_failures: Vec<Failure<E>>,
    /// `v(ab) > v(a) ⊗ v(b)`.
    pub submultiplicativity_failures: Vec<Failure<E>>,
    pub verdict: Verdict,
    /// The verdict holds on all of `A`, not just on the samples.
    pub exact: bool,
    pub scope: String,
}

impl<E> AxiomReport<E> {
    pub(crate) fn new(pairs_checked: usize, scope: String) -> Self {
        AxiomReport {
            pairs_checked,
            multiplicativity_failures: Vec::new(),
            p1_failures: Vec::new(),
            subadditivity_failures: Vec::new(),
            submultiplicativity_failures: Vec::new(),
            verdict: Verdict::Valuation,
            exact: false,
            scope,
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.verdict = if !self.subadditivity_failures.is_empty() || !self.submultiplicativity_failures.is_empty() {
            Verdict::Invalid
        } else if self.multiplicativity_failures.is_empty() && self.p1_failures.is_empty() {
            Verdict::Valuation
        } else {
            Verdict::QuasiValuationOnly
        };
        self
    }

    /// The first failure of any kind.
    pub fn first_failure(&self) -> Option<&Failure<E>> {
        self.multiplicativity_failures
            .first()
            .or(self.p1_failures.first())
            .or(self.subadditivity_failures.first())
            .or(self.submultiplicativity_failures.first())
    }
}

/// Values of one sampled pair.
pub(crate) struct PairValues {
    pub va: TropicalValue,
    pub vb: TropicalValue,
    pub vsum: TropicalValue,
    pub vprod: TropicalValue,
}

/// Records the failures a pair exhibits; product relations only when
/// `multiplicative`.
pub(crate) fn record<E: Clone>(report: &mut AxiomReport<E>, a: &E, b: &E, pv: PairValues, multiplicative: bool) {
    let fail = |lhs: &TropicalValue, rhs: TropicalValue| Failure {
        a: a.clone(),
        b: b.clone(),
        lhs: lhs.clone(),
        rhs,
    };
    let max = trop_add(&pv.va, &pv.vb);
    let prod = trop_mul(&pv.va, &pv.vb);
    if pv.vsum > max {
        report.subadditivity_failures.push(fail(&pv.vsum, max.clone()));
    } else if pv.vsum < max && pv.va != pv.vb {
        report.p1_failures.push(fail(&pv.vsum, max.clone()));
    }
    if !multiplicative {
        return;
    }
    if pv.vprod > prod {
        report.submultiplicativity_failures.push(fail(&pv.vprod, prod.clone()));
    } else if pv.vprod != prod {
        report.multiplicativity_failures.push(fail(&pv.vprod, prod));
    }
}

/// Samples `n_pairs` pairs (a fixed structured prefix, then seeded random
/// polynomials of degree at most `degree_bound`) and records every failure
/// of multiplicativity, of the strict-drop rule, and of the quasi-valuation
/// inequalities.
pub fn check_axioms(
    v: &CandidateValuation,
    seed: u64,
    n_pairs: usize,
    degree_bound: u32,
) -> Result<AxiomReport<Polynomial>> {
    let pairs = sample_pairs(v.presentation.ring(), seed, n_pairs, degree_bound);
    let values = pairs
        .par_iter()
        .map(|(a, b)| {
            Ok(PairValues {
                va: v.evaluate(a)?,
                vb: v.evaluate(b)?,
                vsum: v.evaluate(&a.add(b)?)?,
                vprod: v.evaluate(&a.mul(b)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let exact = v.axioms_are_structural();
    let scope = if exact {
        "exact: weight valuation on a free algebra".to_string()
    } else {
        format!(
            "sampled: no claim beyond {} pairs (seed {seed}, degree <= {degree_bound})",
            pairs.len()
        )
    };
    let mut report = AxiomReport::new(pairs.len(), scope);
    for ((a, b), pv) in pairs.iter().zip(values) {
        record(&mut report, a, b, pv, true);
    }
    let mut report = report.finish();
    report.exact = exact && report.verdict == Verdict::Valuation;
    Ok(report)
}

/// `(v(x₁), …, v(xₙ))`.
pub fn tropicalize(v: &CandidateValuation) -> Result<WeightVector> {
    let ring = v.presentation.ring();
    (0..ring.dim())
        .map(|i| match v.evaluate(&Polynomial::var(ring, i))? {
            TropicalValue::Finite(q) => Ok(q),
            TropicalValue::Bottom => Err(Error::NonfiniteGeneratorValue {
                variable: ring.vars()[i].clone(),
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(WeightVector::new)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMode {
    /// Each supplied generator has two terms of maximal weight.
    Prevariety,
    /// `in_w(I)` contains no monomial.
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Failing generator (prevariety) or monomial of `in_w(I)` (certified).
    pub witness: Option<Polynomial>,
    pub initial_ideal: Vec<Polynomial>,
}

pub fn check_trop_membership(p: &Presentation, w: &WeightVector, mode: MembershipMode) -> Result<Membership> {
    p.check_weight(w)?;
    match mode {
        MembershipMode::Prevariety => {
            for g in p.ideal_gens() {
                if !has_two_max_terms(g, w) {
                    return Ok(Membership {
                        member: false,
                        witness: Some(g.clone()),
                        initial_ideal: Vec::new(),
                    });
                }
            }
            Ok(Membership {
                member: true,
                witness: None,
                initial_ideal: Vec::new(),
            })
        }
        MembershipMode::Certified => {
            let gens = initial_ideal(p, w)?;
            let m = contains_monomial(&gens, p.ring())?;
            Ok(Membership {
                member: !m.contains,
                witness: m.witness,
                initial_ideal: gens,
            })
        }
    }
}

/// Whether at least two terms of `f` attain the maximal `w`-weight.
pub fn has_two_max_terms(f: &Polynomial, w: &WeightVector) -> bool {
    let weights: Vec<Rational> = f.terms().map(|(e, _)| w.dot(e)).collect();
    match weights.iter().max() {
        Some(top) => weights.iter().filter(|q| *q == top).count() >= 2,
        None => true,
    }
}

/// `f*(v)` for the map `B' → A` sending the `i`-th variable of `target` to
/// `images[i]`. The map must send the ideal of `target` into that of `A`;
/// injectivity is taken on the caller's word and recorded in the notes.
pub fn pullback(images: &[Polynomial], v: &CandidateValuation, target: &Presentation) -> Result<CandidateValuation> {
    check_homomorphism(images, v.presentation(), target)?;
    let mut notes = v.notes.clone();
    notes.push(format!(
        "map ({}) asserted injective by caller",
        images.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    ));
    Ok(CandidateValuation {
        presentation: target.clone(),
        source: Source::Pullback {
            images: images.to_vec(),
            base: Arc::new(v.clone()),
        },
        overrides: BTreeMap::new(),
        canonical: grevlex_basis(target)?,
        notes,
    })
}

fn check_homomorphism(images: &[Polynomial], base: &Presentation, target: &Presentation) -> Result<()> {
    if images.len() != target.ring().dim() {
        return Err(Error::DimensionMismatch {
            expected: target.ring().dim(),
            found: images.len(),
        });
    }
    if images.iter().any(|g| g.ring() != base.ring()) {
        return Err(Error::RingMismatch);
    }
    let gb = grevlex_basis(base)?;
    for g in target.ideal_gens() {
        if !gb.contains(&g.substitute(images, base.ring())?)? {
            return Err(Error::NotAHomomorphism {
                generator: g.to_string(),
            });
        }
    }
    Ok(())
}

/// A presentation of (a subalgebra of) `A` together with the images of its
/// generators in `A`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub presentation: Presentation,
    pub images: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    /// `φ̂` of the pulled-back valuation, one per chart.
    pub tuples: Vec<WeightVector>,
    pub consistent: bool,
    /// `(generator, chart i, chart j)` where the values disagree.
    pub conflict: Option<(String, usize, usize)>,
}

/// Pulls `v` back to each chart and checks that generators shared between
/// charts (same name, same image) get the same value.
pub fn cross_presentation_consistency(charts: &[Chart], v: &CandidateValuation) -> Result<ConsistencyReport> {
    let mut dictionary: BTreeMap<&str, (usize, &Polynomial)> = BTreeMap::new();
    for (k, chart) in charts.iter().enumerate() {
        if chart.images.len() != chart.presentation.ring().dim() {
            return Err(Error::DictionaryMismatch(format!(
                "chart {k} has {} generators but {} images",
                chart.presentation.ring().dim(),
                chart.images.len()
            )));
        }
        for (name, image) in chart.presentation.ring().vars().iter().zip(&chart.images) {
            match dictionary.get(name.as_str()) {
                Some((j, other)) if *other != image => {
                    return Err(Error::DictionaryMismatch(format!(
                        "generator {name} maps to {other} in chart {j} but to {image} in chart {k}"
                    )));
                }
                Some(_) => {}
                None => {
                    dictionary.insert(name, (k, image));
                }
            }
        }
    }
    let tuples = charts
        .iter()
        .map(|c| tropicalize(&pullback(&c.images, v, &c.presentation)?))
        .collect::<Result<Vec<_>>>()?;
    let mut seen: BTreeMap<&str, (usize, &Rational)> = BTreeMap::new();
    for (k, (chart, t)) in charts.iter().zip(&tuples).enumerate() {
        for (name, q) in chart.presentation.ring().vars().iter().zip(t.weights()) {
            match seen.get(name.as_str()) {
                Some((j, other)) if *other != q => {
                    return Ok(ConsistencyReport {
                        tuples: tuples.clone(),
                        consistent: false,
                        conflict: Some((name.clone(), *j, k)),
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(name, (k, q));
                }
            }
        }
    }
    Ok(ConsistencyReport {
        tuples,
        consistent: true,
        conflict: None,
    })
}
