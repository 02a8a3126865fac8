//! Seeded samplers shared by the axiom checkers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{ExponentVector, Polynomial, RingContext};
use crate::Rational;

pub type SampleRng = ChaCha8Rng;

/// Seed, sample count and degree bound for a sampling check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree_bound: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 1,
            samples: 200,
            degree_bound: 4,
        }
    }
}

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform exponent vector of total degree at most `degree_bound`.
pub fn random_exponent(rng: &mut SampleRng, n: usize, degree_bound: u32) -> ExponentVector {
    let mut exps = vec![0u32; n];
    if n == 0 {
        return ExponentVector::new(exps);
    }
    let d = rng.gen_range(0..=degree_bound);
    for _ in 0..d {
        exps[rng.gen_range(0..n)] += 1;
    }
    ExponentVector::new(exps)
}

/// Nonzero coefficient in `[−3, 3]`.
pub fn random_coefficient(rng: &mut SampleRng) -> Rational {
    let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::from_integer(c.into())
}

/// Random nonzero polynomial with 1 to 4 terms of degree at most `degree_bound`.
pub fn random_poly(rng: &mut SampleRng, ring: &RingContext, degree_bound: u32) -> Polynomial {
    let n_terms = rng.gen_range(1..=4);
    let mut terms = BTreeMap::new();
    for _ in 0..n_terms {
        let e = random_exponent(rng, ring.dim(), degree_bound);
        let c = random_coefficient(rng);
        terms.entry(e).or_insert(c);
    }
    Polynomial::from_terms(ring, terms)
}

/// Small elements every check tries before random ones: `xᵢ`, `xᵢ ± xⱼ`,
/// `xᵢ ± 1`.
pub fn structured_elements(ring: &RingContext) -> Vec<Polynomial> {
    let n = ring.dim();
    let var = |i| Polynomial::var(ring, i);
    let one = Polynomial::one(ring);
    let mut out = Vec::new();
    for i in 0..n {
        out.push(var(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(var(i).add(&var(j)).unwrap());
            out.push(var(i).sub(&var(j)).unwrap());
        }
    }
    for i in 0..n {
        out.push(var(i).add(&one).unwrap());
        out.push(var(i).sub(&one).unwrap());
    }
    out
}

/// `n_pairs` pairs: all unordered pairs of structured elements first, then
/// random pairs from the seed.
pub fn sample_pairs(ring: &RingContext, seed: u64, n_pairs: usize, degree_bound: u32) -> Vec<(Polynomial, Polynomial)> {
    let structured = structured_elements(ring);
    let mut pairs = Vec::with_capacity(n_pairs);
    'outer: for i in 0..structured.len() {
        for j in i..structured.len() {
            if pairs.len() == n_pairs {
                break 'outer;
            }
            pairs.push((structured[i].clone(), structured[j].clone()));
        }
    }
    let mut rng = rng(seed);
    while pairs.len() < n_pairs {
        let a = random_poly(&mut rng, ring, degree_bound);
        let b = random_poly(&mut rng, ring, degree_bound);
        pairs.push((a, b));
    }
    pairs
}
