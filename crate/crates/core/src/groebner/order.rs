use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::ExponentVector;
use crate::trop::WeightVector;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieBreak {
    GRevLex,
    Lex,
}

/// Weight order refined by a tie-break order. With a zero weight vector this
/// is just the tie-break order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    primary: WeightVector,
    tie_break: TieBreak,
    // primary weights scaled by the lcm of their denominators
    scaled: Vec<i64>,
}

impl MonomialOrder {
    pub fn new(primary: WeightVector, tie_break: TieBreak) -> Result<Self> {
        let lcm = primary
            .weights()
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled = primary
            .weights()
            .iter()
            .map(|q| {
                (q * Rational::from_integer(lcm.clone()))
                    .to_integer()
                    .to_i64()
                    .filter(|v| v.unsigned_abs() < (1 << 40))
                    .ok_or_else(|| Error::WeightOverflow(primary.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialOrder {
            primary,
            tie_break,
            scaled,
        })
    }

    pub fn grevlex(n: usize) -> Self {
        Self::new(WeightVector::zeros(n), TieBreak::GRevLex).expect("zero weights")
    }

    pub fn lex(n: usize) -> Self {
        Self::new(WeightVector::zeros(n), TieBreak::Lex).expect("zero weights")
    }

    /// `w` refined by graded reverse lex.
    pub fn weighted(w: &WeightVector) -> Result<Self> {
        Self::new(w.clone(), TieBreak::GRevLex)
    }

    pub fn primary(&self) -> &WeightVector {
        &self.primary
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    pub fn dim(&self) -> usize {
        self.scaled.len()
    }

    /// Nonnegative primary weights make this a well-order, so division
    /// always terminates.
    pub fn is_well_order(&self) -> bool {
        self.scaled.iter().all(|&w| w >= 0)
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        for e in [a, b] {
            if e.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: e.len(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    pub(crate) fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let weight = |e: &ExponentVector| -> i128 {
            e.exps()
                .iter()
                .zip(&self.scaled)
                .map(|(&k, &w)| k as i128 * w as i128)
                .sum()
        };
        weight(a).cmp(&weight(b)).then_with(|| match self.tie_break {
            TieBreak::Lex => a.exps().cmp(b.exps()),
            TieBreak::GRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exps().iter().zip(b.exps()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        })
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tb = match self.tie_break {
            TieBreak::GRevLex => "grevlex",
            TieBreak::Lex => "lex",
        };
        write!(f, "weight {} refined by {}", self.primary, tb)
    }
}
