use std::fmt;

use super::{Polynomial, RingContext};
use crate::error::{Error, Result};
use crate::trop::{format_rational, WeightVector};
use crate::Rational;

/// Valuation on the coefficient field. A nontrivial valuation is encoded by a
/// ring variable acting as the uniformizer, with a fixed weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffValuation {
    Trivial,
    TAdic { index: usize, weight: Rational },
}

/// An algebra `ℚ[X]/I` given by a ring and generators of `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    ring: RingContext,
    ideal_gens: Vec<Polynomial>,
    coeff_valuation: CoeffValuation,
}

impl Presentation {
    /// Zero generators are dropped; they do not change the ideal.
    pub fn new(ring: RingContext, ideal_gens: Vec<Polynomial>, coeff_valuation: CoeffValuation) -> Result<Self> {
        if ideal_gens.iter().any(|g| g.ring() != &ring) {
            return Err(Error::RingMismatch);
        }
        if let CoeffValuation::TAdic { index, .. } = &coeff_valuation {
            if *index >= ring.dim() {
                return Err(Error::IndexOutOfRange {
                    index: *index,
                    len: ring.dim(),
                });
            }
        }
        Ok(Presentation {
            ring,
            ideal_gens: ideal_gens.into_iter().filter(|g| !g.is_zero()).collect(),
            coeff_valuation,
        })
    }

    /// The free algebra on `ring`.
    pub fn free(ring: RingContext) -> Self {
        Presentation {
            ring,
            ideal_gens: Vec::new(),
            coeff_valuation: CoeffValuation::Trivial,
        }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn coeff_valuation(&self) -> &CoeffValuation {
        &self.coeff_valuation
    }

    pub fn is_free(&self) -> bool {
        self.ideal_gens.is_empty()
    }

    pub fn with_ideal(&self, ideal_gens: Vec<Polynomial>) -> Result<Self> {
        Presentation::new(self.ring.clone(), ideal_gens, self.coeff_valuation.clone())
    }

    /// Checks that `w` fits the ring and agrees with the uniformizer weight.
    pub fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.len() != self.ring.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.dim(),
                found: w.len(),
            });
        }
        if let CoeffValuation::TAdic { index, weight } = &self.coeff_valuation {
            if &w.weights()[*index] != weight {
                return Err(Error::CoefficientValuationMismatch {
                    variable: self.ring.vars()[*index].clone(),
                    expected: format_rational(weight),
                    found: format_rational(&w.weights()[*index]),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.ring)?;
        if !self.ideal_gens.is_empty() {
            let gens: Vec<String> = self.ideal_gens.iter().map(ToString::to_string).collect();
            writeln!(f, "ideal {};", gens.join(", "))?;
        }
        match &self.coeff_valuation {
            CoeffValuation::Trivial => writeln!(f, "coeffval trivial;"),
            CoeffValuation::TAdic { index, weight } => writeln!(
                f,
                "coeffval tadic {} {};",
                self.ring.vars()[*index],
                format_rational(weight)
            ),
        }
    }
}
