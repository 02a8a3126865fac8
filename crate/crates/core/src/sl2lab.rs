//! SL2 at desk scale: the representation ring `ℚ[x, y]` and the
//! triple-tensor branching algebra, realized inside
//! `ℚ[x1, x2, x3, z12, z13, z23] / ⟨x1·z23 − x2·z13 + x3·z12⟩`.
//!
//! A monomial `x^i z^j` of the branching algebra has outer weights
//! `a = i1 + j12 + j13`, `b = i2 + j12 + j23`, `c = i3 + j13 + j23`, total
//! weight `λ = i1 + i2 + i3` and intermediate weight `η = a + b − 2·j12`.
//! Grades are `(a, b, c, η, λ)`. The relation is homogeneous in `a, b, c, λ`
//! but not in `η`, so products spread downward in `η` in steps of 2.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{monomial_label, BasisElem, Grade, GradedAlgebra, LexFunctional, StructureConstants, Truncation};
use crate::groebner::{buchberger, GroebnerBasis, MonomialOrder};
use crate::poly::{ExponentVector, Polynomial, RingContext};
use crate::trop::WeightVector;
use crate::Rational;

pub const BRANCHING_VARS: [&str; 6] = ["x1", "x2", "x3", "z12", "z13", "z23"];

/// Order in which `x2·z13` leads the straightening relation.
pub const STRAIGHTENING_WEIGHT: [i64; 6] = [0, 1, 0, 0, 1, 0];

/// The positive-root direction: the amount by which `η` drops.
pub const POSITIVE_ROOT: [i64; 5] = [0, 0, 0, 2, 0];

/// `ℚ[x, y]` graded by degree, truncated at `n`. The component of degree
/// `d` has basis `x^(d−i) y^i`, `i = 0..=d`.
pub fn sl2_rep_ring(n: u32) -> Result<GradedAlgebra> {
    if n < 1 {
        return Err(Error::InvalidAlgebra("the representation ring needs N ≥ 1".into()));
    }
    let components = (0..=n).map(|d| (vec![d], d as usize + 1)).collect();
    let mut structure = StructureConstants::new();
    let mut labels = BTreeMap::new();
    for d in 0..=n {
        for i in 0..=d {
            labels.insert(
                BasisElem::new(vec![d], i as usize),
                monomial_label(&["x", "y"], &[d - i, i]),
            );
            for e in 0..=(n - d) {
                for j in 0..=e {
                    structure.insert(
                        (BasisElem::new(vec![d], i as usize), BasisElem::new(vec![e], j as usize)),
                        vec![(BasisElem::new(vec![d + e], (i + j) as usize), Rational::one())],
                    );
                }
            }
        }
    }
    GradedAlgebra::new(
        1,
        components,
        structure,
        Truncation {
            bound: n,
            degree_weights: vec![1],
        },
        labels,
    )
}

pub fn branching_ring() -> RingContext {
    RingContext::new(BRANCHING_VARS).expect("distinct names")
}

/// `x1·z23 − x2·z13 + x3·z12`.
pub fn straightening_relation(ring: &RingContext) -> Polynomial {
    let m = |exps: [u32; 6], c: i64| {
        Polynomial::monomial(
            ring,
            ExponentVector::new(exps.to_vec()),
            Rational::from_integer(c.into()),
        )
    };
    let terms = [
        m([1, 0, 0, 0, 0, 1], 1),
        m([0, 1, 0, 0, 1, 0], -1),
        m([0, 0, 1, 1, 0, 0], 1),
    ];
    terms
        .iter()
        .skip(1)
        .fold(terms[0].clone(), |acc, t| acc.add(t).unwrap())
}

pub fn straightening_basis() -> Result<GroebnerBasis> {
    let ring = branching_ring();
    let order = MonomialOrder::weighted(&WeightVector::from_ints(&STRAIGHTENING_WEIGHT))?;
    buchberger(&ring, &[straightening_relation(&ring)], &order)
}

/// `(a, b, c, η, λ)` of a monomial in `x1, x2, x3, z12, z13, z23`.
pub fn branching_grade(e: &[u32]) -> Grade {
    let [i1, i2, i3, j12, j13, j23] = [e[0], e[1], e[2], e[3], e[4], e[5]];
    let a = i1 + j12 + j13;
    let b = i2 + j12 + j23;
    let c = i3 + j13 + j23;
    vec![a, b, c, a + b - 2 * j12, i1 + i2 + i3]
}

/// Monomials with `a + b + c ≤ n` not divisible by a leading monomial.
fn normal_monomials(gb: &GroebnerBasis, n: u32) -> Vec<ExponentVector> {
    let leads = gb.leading_monomials();
    let mut out = Vec::new();
    // a + b + c = (i1 + i2 + i3) + 2 (j12 + j13 + j23)
    let mut stack = vec![Vec::new()];
    while let Some(p) = stack.pop() {
        if p.len() == 6 {
            let e = ExponentVector::new(p);
            if !leads.iter().any(|l| l.divides(&e)) {
                out.push(e);
            }
            continue;
        }
        let used: u32 = p.iter().enumerate().map(|(k, &x)| if k < 3 { x } else { 2 * x }).sum();
        let step = if p.len() < 3 { 1 } else { 2 };
        for x in 0..=(n - used) / step {
            let mut q = p.clone();
            q.push(x);
            stack.push(q);
        }
    }
    out.sort();
    out
}

/// The branching algebra truncated at `a + b + c ≤ n`, with the normal
/// monomials of the straightening relation as basis. Within a grade, basis
/// elements are numbered in increasing exponent order.
pub fn sl2_branching_algebra(n: u32) -> Result<GradedAlgebra> {
    if n < 2 {
        return Err(Error::InvalidAlgebra("the branching algebra needs N ≥ 2".into()));
    }
    let gb = straightening_basis()?;
    let ring = gb.ring().clone();
    let monomials = normal_monomials(&gb, n);
    let mut components: BTreeMap<Grade, usize> = BTreeMap::new();
    let mut elem_of: BTreeMap<ExponentVector, BasisElem> = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for e in &monomials {
        let s = branching_grade(e.exps());
        let size = components.entry(s.clone()).or_insert(0);
        let b = BasisElem::new(s, *size);
        *size += 1;
        labels.insert(b.clone(), monomial_label(&BRANCHING_VARS, e.exps()));
        elem_of.insert(e.clone(), b);
    }
    let truncation = Truncation {
        bound: n,
        degree_weights: vec![1, 1, 1, 0, 0],
    };
    let mut structure = StructureConstants::new();
    for (x, e) in monomials.iter().enumerate() {
        for f in &monomials[x..] {
            let prod = e.add(f);
            if !truncation.contains(&branching_grade(prod.exps())) {
                continue;
            }
            let nf = gb.normal_form(&Polynomial::monomial(&ring, prod, Rational::one()))?;
            let terms = nf.terms().map(|(m, c)| (elem_of[m].clone(), c.clone())).collect();
            structure.insert((elem_of[e].clone(), elem_of[f].clone()), terms);
        }
    }
    GradedAlgebra::new(5, components, structure, truncation, labels)
}

/// Sign of a functional on the positive-root direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub value_on_root: Vec<Rational>,
    pub nonnegative: bool,
    pub strict: bool,
}

fn root_report(h: &LexFunctional) -> RootReport {
    let value_on_root = h.eval_direction(&POSITIVE_ROOT);
    let zero = vec![Rational::zero(); value_on_root.len()];
    RootReport {
        nonnegative: value_on_root >= zero,
        strict: value_on_root > zero,
        value_on_root,
    }
}

/// A functional on `(a, b, c, η, λ)` grades, given row by row, with its sign
/// on the positive root. A nonnegative functional makes the branching
/// algebra lower-triangular.
pub fn root_functional(rows: Vec<Vec<Rational>>) -> Result<(LexFunctional, RootReport)> {
    if let Some(bad) = rows.iter().find(|r| r.len() != 5) {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: bad.len(),
        });
    }
    let h = LexFunctional::new(rows)?;
    let report = root_report(&h);
    Ok((h, report))
}

/// Zeroes row `index` of `h` and reports on the coarser functional.
pub fn collapse_functional(h: &LexFunctional, index: usize) -> Result<(LexFunctional, RootReport)> {
    let h = h.collapse(index)?;
    let report = root_report(&h);
    Ok((h, report))
}

/// `η` first, then the remaining coordinates: totally orders all grades and
/// is strictly positive on the root.
pub fn cartan_lex_functional() -> LexFunctional {
    LexFunctional::from_ints(&[
        &[0, 0, 0, 1, 0],
        &[1, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 1],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{check_lower_triangular, check_monoid_theorem, Element};
    use crate::sample::SampleConfig;

    fn pos(a: &GradedAlgebra, label: &str) -> usize {
        a.find_label(label)
            .unwrap_or_else(|| panic!("no basis element {label}"))
    }

    #[test]
    fn rep_ring_shape() {
        let r = sl2_rep_ring(2).unwrap();
        assert_eq!(r.component_size(&[1]), 2);
        assert_eq!(r.component_size(&[2]), 3);
        let xy = r
            .mul(&Element::basis(pos(&r, "x")), &Element::basis(pos(&r, "y")))
            .unwrap();
        assert_eq!(r.format_element(&xy), "x*y");
        let w = LexFunctional::from_ints(&[&[1]]);
        let rep = check_monoid_theorem(&r, &w, &SampleConfig::default()).unwrap();
        assert!(rep.hypotheses_hold() && rep.conclusion_holds());
        assert!(sl2_rep_ring(0).is_err());
    }

    #[test]
    fn relation_leads_with_x2_z13() {
        let gb = straightening_basis().unwrap();
        assert_eq!(gb.gens().len(), 1);
        assert_eq!(
            gb.leading_monomials(),
            vec![ExponentVector::new(vec![0, 1, 0, 0, 1, 0])]
        );
    }

    #[test]
    fn branching_products() {
        let a = sl2_branching_algebra(4).unwrap();
        let z12 = pos(&a, "z12");
        let sq = a.mul(&Element::basis(z12), &Element::basis(z12)).unwrap();
        assert_eq!(a.format_element(&sq), "z12^2");
        let g = a.grade(sq.support().next().unwrap()).clone();
        assert_eq!(g, vec![2, 2, 0, 0, 0]);

        // x2·z13 is not a basis monomial; it straightens across two η
        let p = a
            .mul(&Element::basis(pos(&a, "x2")), &Element::basis(pos(&a, "z13")))
            .unwrap();
        assert_eq!(a.format_element(&p), "x1*z23 + x3*z12");
        let etas: Vec<u32> = p.support().map(|k| a.grade(k)[3]).collect();
        assert_eq!(etas.len(), 2);
        assert!(etas.contains(&2) && etas.contains(&0));
    }

    #[test]
    fn lower_triangular_iff_nonnegative_on_root() {
        let a = sl2_branching_algebra(4).unwrap();
        let q = |k: i64| Rational::from_integer(k.into());
        let (up, r) = root_functional(vec![vec![q(0), q(0), q(0), q(1), q(0)]]).unwrap();
        assert!(r.strict);
        assert!(check_lower_triangular(&a, &up).unwrap().holds);
        let (down, r) = root_functional(vec![vec![q(0), q(0), q(0), q(-1), q(0)]]).unwrap();
        assert!(!r.nonnegative);
        let lt = check_lower_triangular(&a, &down).unwrap();
        assert!(!lt.holds);
        assert!(lt.witness.is_some());
        let (zero, r) = root_functional(vec![vec![q(0); 5]]).unwrap();
        assert!(r.nonnegative && !r.strict);
        assert!(check_lower_triangular(&a, &zero).unwrap().holds);
        assert!(root_functional(vec![vec![q(1)]]).is_err());
    }

    #[test]
    fn collapsing_rows() {
        let h = cartan_lex_functional();
        assert!(root_report(&h).strict);
        let (c, r) = collapse_functional(&h, 0).unwrap();
        assert!(r.nonnegative && !r.strict);
        assert_ne!(c.eval(&[0, 0, 0, 2, 0]), h.eval(&[0, 0, 0, 2, 0]));
        let all = (0..5).try_fold(h.clone(), |h, k| h.collapse(k)).unwrap();
        assert!(all.eval(&[1, 2, 3, 4, 5]).iter().all(Zero::is_zero));
        assert!(matches!(
            collapse_functional(&h, 5),
            Err(Error::IndexOutOfRange { index: 5, len: 5 })
        ));
    }
}
