//! Generalized and graded valuations on finitely presented commutative
//! algebras, computed exactly over ℚ.
//!
//! The crate is organised bottom-up:
//!
//! * [`trop`]: the `(max, +)` semiring on `ℚ ∪ {−∞}`;
//! * [`poly`]: polynomials, the text grammar, presentations `ℚ[X]/I`;
//! * [`groebner`]: weight-refined orders, Buchberger, initial ideals,
//!   monomial containment by saturation;
//! * [`valuation`]: weight-induced candidate valuations, axiom sampling,
//!   the map to tropical points, pullbacks;
//! * [`cones`]: the relations `⇒` and `→`, cone sums and facet classes;
//! * [`graded`]: monoid-graded algebras and graded valuations;
//! * [`sl2lab`]: SL2 representation ring and triple-tensor branching algebra.

pub mod cones;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod poly;
pub mod sample;
pub mod sl2lab;
pub mod trop;
pub mod valuation;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

pub use error::{Error, Result};
pub use poly::{ExponentVector, Polynomial, Presentation, RingContext};
pub use trop::{TropicalValue, WeightVector};
