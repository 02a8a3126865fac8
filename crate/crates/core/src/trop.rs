//! The tropical semiring `(ℚ ∪ {−∞}, max, +)` with exact rational values.
//!
//! `⊕` is `max` with `−∞` as its identity, `⊗` is ordinary addition with
//! `−∞` absorbing. Weights of monomials are computed as exact dot products.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ExponentVector;
use crate::Rational;

/// An element of `ℚ ∪ {−∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropicalValue {
    /// The bottom element `−∞`.
    Bottom,
    Finite(Rational),
}

impl TropicalValue {
    pub fn zero() -> Self {
        TropicalValue::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        TropicalValue::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TropicalValue::Bottom)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropicalValue::Bottom => None,
            TropicalValue::Finite(q) => Some(q),
        }
    }

    /// Scales a finite value by a rational; bottom stays bottom.
    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            TropicalValue::Bottom => TropicalValue::Bottom,
            TropicalValue::Finite(q) => TropicalValue::Finite(q * r),
        }
    }
}

impl From<Rational> for TropicalValue {
    fn from(q: Rational) -> Self {
        TropicalValue::Finite(q)
    }
}

impl PartialOrd for TropicalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropicalValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropicalValue::Bottom, TropicalValue::Bottom) => Ordering::Equal,
            (TropicalValue::Bottom, _) => Ordering::Less,
            (_, TropicalValue::Bottom) => Ordering::Greater,
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => a.cmp(b),
        }
    }
}

/// Tropical addition: `a ⊕ b = max(a, b)`.
pub fn trop_add(a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Tropical multiplication: `a ⊗ b = a + b`, bottom absorbing.
pub fn trop_mul(a: &TropicalValue, b: &TropicalValue) -> TropicalValue {
    match (a, b) {
        (TropicalValue::Finite(x), TropicalValue::Finite(y)) => TropicalValue::Finite(x + y),
        _ => TropicalValue::Bottom,
    }
}

impl Add for TropicalValue {
    type Output = TropicalValue;

    fn add(self, rhs: Self) -> Self::Output {
        trop_add(&self, &rhs)
    }
}

impl Mul for TropicalValue {
    type Output = TropicalValue;

    fn mul(self, rhs: Self) -> Self::Output {
        trop_mul(&self, &rhs)
    }
}

/// `coeff_val ⊗ Σ wᵢ·eᵢ`.
pub fn monomial_weight(w: &WeightVector, e: &ExponentVector, coeff_val: &TropicalValue) -> Result<TropicalValue> {
    if w.len() != e.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            found: e.len(),
        });
    }
    Ok(trop_mul(coeff_val, &TropicalValue::Finite(w.dot(e))))
}

/// Rational weights, one per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Self {
        WeightVector(weights)
    }

    pub fn from_ints(ws: &[i64]) -> Self {
        WeightVector(ws.iter().map(|&w| Rational::from_integer(BigInt::from(w))).collect())
    }

    pub fn zeros(n: usize) -> Self {
        WeightVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    /// Exact dot product with an exponent vector. Lengths must agree.
    pub fn dot(&self, e: &ExponentVector) -> Rational {
        debug_assert_eq!(self.len(), e.len());
        let mut acc = Rational::zero();
        for (w, &k) in self.0.iter().zip(e.exps()) {
            if k != 0 && !w.is_zero() {
                acc += w * Rational::from_integer(BigInt::from(k));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(Signed::is_negative)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    pub fn scale(&self, r: &Rational) -> WeightVector {
        WeightVector(self.0.iter().map(|q| q * r).collect())
    }

    pub fn add(&self, other: &WeightVector) -> Result<WeightVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", format_rational(q))?;
        }
        f.write_str(")")
    }
}

/// Formats as `p` or `p/q` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() || den.starts_with('-') || den.starts_with('+') {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Bottom => f.write_str("-inf"),
            TropicalValue::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

impl FromStr for TropicalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "-inf" {
            Ok(TropicalValue::Bottom)
        } else {
            parse_rational(s).map(TropicalValue::Finite)
        }
    }
}
