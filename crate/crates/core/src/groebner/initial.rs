use std::collections::BTreeMap;
#[cfg(test)]
use std::collections::BTreeSet;

use rayon::prelude::*;

use super::buchberger::{buchberger, GroebnerBasis};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::{CoeffValuation, ExponentVector, Polynomial, Presentation, RingContext};
use crate::trop::WeightVector;
use crate::Rational;

/// Sum of the terms of `f` of maximal `w`-weight. With a t-adic coefficient
/// valuation the uniformizer is an ordinary variable whose weight must match.
pub fn initial_form(f: &Polynomial, w: &WeightVector, cv: &CoeffValuation) -> Result<Polynomial> {
    if w.len() != f.ring().dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ring().dim(),
            found: w.len(),
        });
    }
    if let CoeffValuation::TAdic { index, weight } = cv {
        if &w.weights()[*index] != weight {
            return Err(Error::CoefficientValuationMismatch {
                variable: f.ring().vars()[*index].clone(),
                expected: crate::trop::format_rational(weight),
                found: crate::trop::format_rational(&w.weights()[*index]),
            });
        }
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let weights: Vec<(Rational, &ExponentVector, &Rational)> = f.terms().map(|(e, c)| (w.dot(e), e, c)).collect();
    let top = weights.iter().map(|t| &t.0).max().unwrap().clone();
    Ok(Polynomial::from_terms(
        f.ring(),
        weights
            .into_iter()
            .filter(|t| t.0 == top)
            .map(|(_, e, c)| (e.clone(), c.clone())),
    ))
}

/// Generators of `in_w(I)`: initial forms of a `w`-refined Gröbner basis.
///
/// When `w` has negative entries and `I` is not homogeneous the weight order
/// is not a well-order; then `I` is homogenized, the computation is done for
/// `(0, w)` shifted to be nonnegative, and the result dehomogenized.
pub fn initial_ideal(p: &Presentation, w: &WeightVector) -> Result<Vec<Polynomial>> {
    p.check_weight(w)?;
    if p.is_free() {
        return Ok(Vec::new());
    }
    let ring = p.ring();
    let homogeneous = p.ideal_gens().iter().all(Polynomial::is_homogeneous);
    let mut forms = if !w.has_negative() || homogeneous {
        let shift = if homogeneous {
            min_shift(w)
        } else {
            Rational::from_integer(0.into())
        };
        let shifted = WeightVector::new(w.weights().iter().map(|q| q + &shift).collect());
        let gb = buchberger(ring, p.ideal_gens(), &MonomialOrder::weighted(&shifted)?)?;
        gb.gens()
            .iter()
            .map(|g| initial_form(g, w, &CoeffValuation::Trivial))
            .collect::<Result<Vec<_>>>()?
    } else {
        let hring = homogenizing_ring(ring)?;
        let affine = buchberger(ring, p.ideal_gens(), &MonomialOrder::grevlex(ring.dim()))?;
        let hgens: Vec<Polynomial> = affine.gens().iter().map(|g| g.homogenize(&hring)).collect();
        let shift = min_shift(w);
        let mut hw = vec![shift.clone()];
        hw.extend(w.weights().iter().map(|q| q + &shift));
        let hw = WeightVector::new(hw);
        let gb = buchberger(&hring, &hgens, &MonomialOrder::weighted(&hw)?)?;
        gb.gens()
            .iter()
            .map(|g| Ok(initial_form(g, &hw, &CoeffValuation::Trivial)?.dehomogenize(ring)))
            .collect::<Result<Vec<_>>>()?
    };
    forms.retain(|f| !f.is_zero());
    let mut out: Vec<Polynomial> = Vec::new();
    for f in forms.into_iter().map(|f| f.monic()) {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn min_shift(w: &WeightVector) -> Rational {
    let min = w.weights().iter().min().cloned().unwrap_or_default();
    if min < Rational::from_integer(0.into()) {
        -min
    } else {
        Rational::from_integer(0.into())
    }
}

fn fresh_name(ring: &RingContext, base: &str) -> String {
    let mut name = base.to_string();
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

fn homogenizing_ring(ring: &RingContext) -> Result<RingContext> {
    let h = fresh_name(ring, "h");
    let mut vars = vec![h];
    vars.extend(ring.vars().iter().cloned());
    RingContext::new(vars)
}

/// Reduced grevlex basis of `in_w(I)`; equal ideals give equal bases.
pub fn canonical_initial_ideal(p: &Presentation, w: &WeightVector) -> Result<GroebnerBasis> {
    let gens = initial_ideal(p, w)?;
    buchberger(p.ring(), &gens, &MonomialOrder::grevlex(p.ring().dim()))
}

/// Outcome of a monomial-containment test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialContainment {
    pub contains: bool,
    /// A monomial in the ideal, when `contains`.
    pub witness: Option<Polynomial>,
}

/// Decides whether `⟨gens⟩` contains a monomial: it does iff the saturation
/// by the product of all variables is the unit ideal, computed as
/// `⟨gens, u·x₁⋯xₙ − 1⟩ ∩ ℚ[X] ∋ 1`.
pub fn contains_monomial(gens: &[Polynomial], ring: &RingContext) -> Result<MonomialContainment> {
    if gens.iter().all(Polynomial::is_zero) {
        return Ok(MonomialContainment {
            contains: false,
            witness: None,
        });
    }
    let u = fresh_name(ring, "u");
    let ext = ring.extended(&[u.as_str()])?;
    let n = ring.dim();
    let mut ext_gens = gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>>>()?;
    let all_vars = ExponentVector::new(vec![1; n + 1]);
    ext_gens.push(Polynomial::monomial(&ext, all_vars, Rational::from_integer(1.into())).sub(&Polynomial::one(&ext))?);
    let sat = buchberger(&ext, &ext_gens, &MonomialOrder::grevlex(n + 1))?;
    if !sat.is_unit() {
        return Ok(MonomialContainment {
            contains: false,
            witness: None,
        });
    }
    let gb = buchberger(ring, gens, &MonomialOrder::grevlex(n))?;
    Ok(MonomialContainment {
        contains: true,
        witness: Some(smallest_monomial_in(&gb, ring)?),
    })
}

const WITNESS_SEARCH_LIMIT: usize = 20_000;

/// Smallest monomial in a monomial-containing ideal: by degree, then with the
/// exponent of the first variable largest.
fn smallest_monomial_in(gb: &GroebnerBasis, ring: &RingContext) -> Result<Polynomial> {
    let n = ring.dim();
    let one = Rational::from_integer(1.into());
    let mut k = 0u32;
    let power = loop {
        let m = Polynomial::monomial(ring, ExponentVector::new(vec![k; n]), one.clone());
        if gb.contains(&m)? {
            break m;
        }
        k += 1;
    };
    let mut seen = 0usize;
    for d in 0..=(k as u64 * n as u64) {
        for e in monomials_of_degree(n, d as u32) {
            seen += 1;
            if seen > WITNESS_SEARCH_LIMIT {
                return Ok(power);
            }
            let m = Polynomial::monomial(ring, e, one.clone());
            if gb.contains(&m)? {
                return Ok(m);
            }
        }
    }
    Ok(power)
}

/// Exponent vectors of total degree `d`, first variable's exponent descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(ExponentVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(ExponentVector::new(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Whether `in_{w1}(I) = in_{w2}(I)`.
pub fn same_initial_ideal(p: &Presentation, w1: &WeightVector, w2: &WeightVector) -> Result<bool> {
    if w1 == w2 {
        p.check_weight(w1)?;
        return Ok(true);
    }
    Ok(canonical_initial_ideal(p, w1)? == canonical_initial_ideal(p, w2)?)
}

/// One class of grid weights sharing an initial ideal.
#[derive(Clone, Debug)]
pub struct FanClass {
    pub representative: WeightVector,
    pub members: Vec<WeightVector>,
    pub initial_ideal: Vec<Polynomial>,
    pub monomial_free: bool,
}

/// Groups the grid `{k/d : |k/d| ≤ bound}ⁿ` by initial ideal. Classes are
/// sorted by representative, which is the smallest member.
pub fn enumerate_fan(p: &Presentation, bound: u32, denominator: u32) -> Result<Vec<FanClass>> {
    let n = p.ring().dim();
    let d = denominator.max(1) as i64;
    let b = bound as i64 * d;
    let steps: Vec<Rational> = (-b..=b).map(|k| Rational::new(k.into(), d.into())).collect();
    let mut grid: Vec<Vec<Rational>> = vec![Vec::new()];
    for _ in 0..n {
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                steps.iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s.clone());
                    v
                })
            })
            .collect();
    }
    let mut points: Vec<WeightVector> = grid.into_iter().map(WeightVector::new).collect();
    if let CoeffValuation::TAdic { index, weight } = p.coeff_valuation() {
        points.retain(|w| &w.weights()[*index] == weight);
    }
    let keyed = points
        .par_iter()
        .map(|w| Ok((w.clone(), canonical_initial_ideal(p, w)?.gens().to_vec())))
        .collect::<Result<Vec<_>>>()?;
    let mut classes: BTreeMap<Vec<String>, (Vec<Polynomial>, Vec<WeightVector>)> = BTreeMap::new();
    for (w, gens) in keyed {
        let key = gens.iter().map(ToString::to_string).collect();
        classes.entry(key).or_insert_with(|| (gens, Vec::new())).1.push(w);
    }
    let mut out = classes
        .into_values()
        .map(|(gens, mut members)| {
            members.sort();
            let monomial_free = !contains_monomial(&gens, p.ring())?.contains;
            Ok(FanClass {
                representative: members[0].clone(),
                members,
                initial_ideal: gens,
                monomial_free,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}
