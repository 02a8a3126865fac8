//! The branching algebra as functions on pairs of vectors `p, q ∈ ℚ³`:
//! `xᵢ = pᵢ`, `zᵢⱼ = pᵢqⱼ − pⱼqᵢ`. The straightening relation is the
//! expansion of a 3×3 determinant with a repeated row, so it holds
//! identically, and a product identity in the algebra must hold at every
//! point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use tropval_core::Rational;

const NAMES: [&str; 6] = ["x1", "x2", "x3", "z12", "z13", "z23"];

pub fn point(p: [i64; 3], q: [i64; 3]) -> [Rational; 6] {
    let r = |k: i64| Rational::from_integer(k.into());
    let minor = |i: usize, j: usize| r(p[i] * q[j] - p[j] * q[i]);
    [r(p[0]), r(p[1]), r(p[2]), minor(0, 1), minor(0, 2), minor(1, 2)]
}

/// Exponents of a label such as `x1^2*z23`, or `1`.
pub fn parse_label(label: &str) -> [u32; 6] {
    let mut e = [0; 6];
    if label == "1" {
        return e;
    }
    for factor in label.split('*') {
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (n, p.parse().expect("exponent")),
            None => (factor, 1),
        };
        let k = NAMES.iter().position(|n| *n == name).expect("generator name");
        e[k] += pow;
    }
    e
}

pub fn eval(e: &[u32; 6], pt: &[Rational; 6]) -> Rational {
    let mut out = Rational::one();
    for (x, &k) in pt.iter().zip(e) {
        for _ in 0..k {
            out *= x;
        }
    }
    out
}

/// `Σ c·eval(label)` for a linear combination given by labels.
pub fn eval_combination(terms: &BTreeMap<String, Rational>, pt: &[Rational; 6]) -> Rational {
    terms
        .iter()
        .fold(Rational::zero(), |acc, (l, c)| acc + c * eval(&parse_label(l), pt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_vanishes() {
        let pt = point([2, -1, 3], [5, 7, -4]);
        let v = &pt[0] * &pt[5] - &pt[1] * &pt[4] + &pt[2] * &pt[3];
        assert!(v.is_zero());
        assert_eq!(parse_label("x1^2*z23"), [2, 0, 0, 0, 0, 1]);
    }
}
