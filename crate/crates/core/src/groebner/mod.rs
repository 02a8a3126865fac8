//! Weight-refined monomial orders, division, Buchberger's algorithm, initial
//! forms and initial ideals, and monomial containment by saturation.

mod buchberger;
mod initial;
mod order;

pub use buchberger::{buchberger, leading_monomial, normal_form, same_ideal, GroebnerBasis, DIVISION_STEP_LIMIT};
pub use initial::{
    canonical_initial_ideal, contains_monomial, enumerate_fan, initial_form, initial_ideal, monomials_of_degree,
    same_initial_ideal, FanClass, MonomialContainment,
};
pub use order::{MonomialOrder, TieBreak};
