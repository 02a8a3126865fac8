//! Degree-truncated ideal membership by linear algebra: `f ∈ I_{≤D}` iff the
//! coefficient vector of `f` lies in the span of all `m·gᵢ` with
//! `deg(m·gᵢ) ≤ D`. Sound for membership in `I`; complete once `D` is large.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use tropval_core::groebner::monomials_of_degree;
use tropval_core::{ExponentVector, Polynomial, Rational};

use crate::linalg::Echelon;

pub struct MacaulayMatrix {
    columns: BTreeMap<ExponentVector, usize>,
    echelon: Echelon,
    degree: u32,
}

impl MacaulayMatrix {
    pub fn new(gens: &[Polynomial], n_vars: usize, degree: u32) -> Self {
        let mut columns = BTreeMap::new();
        let mut all = Vec::new();
        for d in 0..=degree {
            for m in monomials_of_degree(n_vars, d) {
                columns.insert(m.clone(), columns.len());
                all.push(m);
            }
        }
        let mut echelon = Echelon::new();
        let one = Rational::one();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.degree().unwrap() as u32;
            if dg > degree {
                continue;
            }
            for m in all.iter().filter(|m| m.degree() as u32 + dg <= degree) {
                let row = g.mul_monomial(m, &one);
                echelon.insert(&Self::vector(&columns, &row));
            }
        }
        MacaulayMatrix {
            columns,
            echelon,
            degree,
        }
    }

    fn vector(columns: &BTreeMap<ExponentVector, usize>, f: &Polynomial) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); columns.len()];
        for (e, c) in f.terms() {
            v[columns[e]] = c.clone();
        }
        v
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// `None` when `f` has degree above the truncation.
    pub fn contains(&self, f: &Polynomial) -> Option<bool> {
        if f.degree().unwrap_or(0) > self.degree as u64 {
            return None;
        }
        Some(self.echelon.contains(&Self::vector(&self.columns, f)))
    }
}
