//! The relations `v ⇒ w` (every `v(a) ≤ v(b)` forces `w(a) ≤ w(b)`) and
//! `v → w` (`in_v(in_w(I)) = in_v(I)`), cone sums, scaling and facet classes.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{canonical_initial_ideal, initial_ideal, monomials_of_degree, same_initial_ideal};
use crate::poly::{ExponentVector, Polynomial, Presentation};
use crate::sample::{sample_pairs, SampleConfig};
use crate::trop::{format_rational, WeightVector};
use crate::valuation::{check_axioms, AxiomReport, CandidateValuation};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Implies,
    Arrow,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Implies => "implies",
            Relation::Arrow => "arrow",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `v(a) ≤ v(b)` but `w(a) > w(b)`.
    Pair { a: Polynomial, b: Polynomial },
    /// Reduced bases of `in_v(in_w(I))` and `in_v(I)`.
    InitialIdeals {
        left: Vec<Polynomial>,
        right: Vec<Polynomial>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    HoldsCertified { certificate: String },
    HoldsNoCounterexample { samples: usize },
    Refuted(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVerdict {
    pub relation: Relation,
    pub status: Status,
}

impl RelationVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self.status, Status::Refuted(_))
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.status, Status::HoldsCertified { .. })
    }
}

/// `c` with `w = c·v` and `c ≥ 0`, if there is one.
fn nonnegative_ratio(v: &WeightVector, w: &WeightVector) -> Option<Rational> {
    let zero = Rational::from_integer(0.into());
    let c = match v.weights().iter().position(|q| q != &zero) {
        Some(i) => &w.weights()[i] / &v.weights()[i],
        None => zero.clone(),
    };
    (c >= zero && v.scale(&c) == *w).then_some(c)
}

/// Monomial pair `(a, b)` with `v·a ≤ v·b` and `w·a > w·b`. Small pairs
/// first; failing that, one built from a direction `d` with `v·d ≤ 0 < w·d`.
fn monomial_witness(v: &WeightVector, w: &WeightVector) -> (ExponentVector, ExponentVector) {
    let n = v.len();
    let small: Vec<ExponentVector> = (0..=2).flat_map(|d| monomials_of_degree(n, d)).collect();
    for a in &small {
        for b in &small {
            if v.dot(a) <= v.dot(b) && w.dot(a) > w.dot(b) {
                return (a.clone(), b.clone());
            }
        }
    }
    let dot = |x: &[Rational], y: &[Rational]| -> Rational { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    let (vw, ww) = (v.weights(), w.weights());
    let vv = dot(vw, vw);
    let zero = Rational::from_integer(0.into());
    let d: Vec<Rational> = if vv == zero {
        ww.to_vec()
    } else {
        // component of w orthogonal to v, or −v when w is a negative multiple
        let c = dot(ww, vw) / &vv;
        let u: Vec<Rational> = ww.iter().zip(vw).map(|(p, q)| p - &c * q).collect();
        if u.iter().all(|q| q == &zero) {
            vw.iter().map(|q| -q).collect()
        } else {
            u
        }
    };
    let lcm = d.iter().fold(num_bigint::BigInt::from(1), |acc, q| {
        num_integer::Integer::lcm(&acc, q.denom())
    });
    let ints: Vec<i64> = d
        .iter()
        .map(|q| {
            use num_traits::ToPrimitive;
            (q * Rational::from_integer(lcm.clone()))
                .to_integer()
                .to_i64()
                .expect("small weights")
        })
        .collect();
    let pos = ints.iter().map(|&k| k.max(0) as u32).collect();
    let neg = ints.iter().map(|&k| (-k).max(0) as u32).collect();
    (ExponentVector::new(pos), ExponentVector::new(neg))
}

/// Decides or searches for a refutation of `v ⇒ w`.
///
/// Weight valuations with `w = c·v`, `c ≥ 0`, satisfy `w(f) = c·v(f)` on any
/// presentation, which certifies the relation. In `exact_mode` on a free
/// algebra, any other pair of weights is refuted by a monomial pair, since
/// `v ⇒ w` on monomials forces `w` onto the ray of `v`. Everything else is
/// a seeded search.
pub fn implies_check(
    v: &CandidateValuation,
    w: &CandidateValuation,
    config: &SampleConfig,
    exact_mode: bool,
) -> Result<RelationVerdict> {
    if v.presentation() != w.presentation() {
        return Err(Error::RingMismatch);
    }
    let verdict = |status| RelationVerdict {
        relation: Relation::Implies,
        status,
    };
    if let (true, true) = (v.is_weight_induced(), w.is_weight_induced()) {
        let (vw, ww) = (v.weight().unwrap(), w.weight().unwrap());
        if let Some(c) = nonnegative_ratio(vw, ww) {
            return Ok(verdict(Status::HoldsCertified {
                certificate: format!("w = {}*v", format_rational(&c)),
            }));
        }
        if exact_mode && v.presentation().is_free() {
            let ring = v.presentation().ring();
            let (a, b) = monomial_witness(vw, ww);
            let one = Rational::from_integer(1.into());
            return Ok(verdict(Status::Refuted(Witness::Pair {
                a: Polynomial::monomial(ring, a, one.clone()),
                b: Polynomial::monomial(ring, b, one),
            })));
        }
    }
    let pairs = sample_pairs(
        v.presentation().ring(),
        config.seed,
        config.samples,
        config.degree_bound,
    );
    let hits = pairs
        .par_iter()
        .map(|(a, b)| -> Result<Option<(Polynomial, Polynomial)>> {
            let (va, vb, wa, wb) = (v.evaluate(a)?, v.evaluate(b)?, w.evaluate(a)?, w.evaluate(b)?);
            Ok(if va <= vb && wa > wb {
                Some((a.clone(), b.clone()))
            } else if vb <= va && wb > wa {
                Some((b.clone(), a.clone()))
            } else {
                None
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verdict(match hits.into_iter().flatten().next() {
        Some((a, b)) => Status::Refuted(Witness::Pair { a, b }),
        None => Status::HoldsNoCounterexample { samples: pairs.len() },
    }))
}

#[derive(Clone, Debug)]
pub struct ConeSum {
    pub sum: CandidateValuation,
    pub axioms: AxiomReport<Polynomial>,
    pub implies: RelationVerdict,
}

/// `w₁ + w₂` for `v ⇒ w₁` and `v ⇒ w₂`, with its axiom report and the
/// verdict for `v ⇒ w₁ + w₂`.
pub fn cone_sum(
    v: &CandidateValuation,
    w1: &CandidateValuation,
    w2: &CandidateValuation,
    config: &SampleConfig,
) -> Result<ConeSum> {
    for (k, w) in [w1, w2].into_iter().enumerate() {
        let h = implies_check(v, w, config, true)?;
        if h.is_refuted() {
            return Err(Error::HypothesisFails(format!("v => w{} is refuted", k + 1)));
        }
    }
    let sum = w1.sum(w2)?;
    let axioms = check_axioms(&sum, config.seed, config.samples, config.degree_bound)?;
    let implies = implies_check(v, &sum, config, true)?;
    Ok(ConeSum { sum, axioms, implies })
}

#[derive(Clone, Debug)]
pub struct Scaled {
    pub valuation: CandidateValuation,
    /// For weight valuations: whether `in_{Rw}(I) = in_w(I)`.
    pub same_facet: Option<bool>,
}

pub fn scale(v: &CandidateValuation, r: &Rational) -> Result<Scaled> {
    let valuation = v.scaled(r)?;
    let same_facet = match (v.weight(), valuation.weight()) {
        (Some(a), Some(b)) => Some(same_initial_ideal(v.presentation(), a, b)?),
        _ => None,
    };
    Ok(Scaled { valuation, same_facet })
}

/// `in_v(in_w(I)) = in_v(I)` on this presentation, compared as reduced bases.
pub fn arrow_check(p: &Presentation, v: &WeightVector, w: &WeightVector) -> Result<RelationVerdict> {
    p.check_weight(v)?;
    let inner = p.with_ideal(initial_ideal(p, w)?)?;
    let left = canonical_initial_ideal(&inner, v)?;
    let right = canonical_initial_ideal(p, v)?;
    let status = if left == right {
        Status::HoldsCertified {
            certificate: "equal reduced grevlex bases".into(),
        }
    } else {
        Status::Refuted(Witness::InitialIdeals {
            left: left.gens().to_vec(),
            right: right.gens().to_vec(),
        })
    };
    Ok(RelationVerdict {
        relation: Relation::Arrow,
        status,
    })
}

#[derive(Clone, Debug)]
pub struct FacetClass {
    pub representative: WeightVector,
    pub members: Vec<WeightVector>,
    pub initial_ideal: Vec<Polynomial>,
}

/// Partitions `ws` by initial ideal; classes and members keep input order.
pub fn facet_classes(p: &Presentation, ws: &[WeightVector]) -> Result<Vec<FacetClass>> {
    let bases = ws
        .par_iter()
        .map(|w| canonical_initial_ideal(p, w).map(|gb| gb.gens().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let mut index: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut classes: Vec<FacetClass> = Vec::new();
    for (w, gens) in ws.iter().zip(bases) {
        let key: Vec<String> = gens.iter().map(ToString::to_string).collect();
        match index.get(&key) {
            Some(&k) => classes[k].members.push(w.clone()),
            None => {
                index.insert(key, classes.len());
                classes.push(FacetClass {
                    representative: w.clone(),
                    members: vec![w.clone()],
                    initial_ideal: gens,
                });
            }
        }
    }
    Ok(classes)
}
