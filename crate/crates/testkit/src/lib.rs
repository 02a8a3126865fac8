//! Oracles that check the engine by independent routes: dense linear
//! algebra instead of Gröbner bases, characters instead of straightening,
//! point evaluation instead of normal forms.

pub mod fixtures;
pub mod linalg;
pub mod macaulay;
pub mod monoid;
pub mod plucker;
pub mod sl2;
