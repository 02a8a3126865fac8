//! SL2 multiplicities from characters. The character of `V(n)` is
//! `q^n + q^{n-2} + … + q^{-n}`; the multiplicity of `V(k)` in a
//! representation is `coeff(q^k) − coeff(q^{k+2})`.

use std::collections::BTreeMap;

type Character = BTreeMap<i64, i64>;

pub fn character(n: u32) -> Character {
    (0..=n as i64).map(|k| (n as i64 - 2 * k, 1)).collect()
}

pub fn product(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn multiplicity(ch: &Character, k: u32) -> i64 {
    let k = k as i64;
    ch.get(&k).copied().unwrap_or(0) - ch.get(&(k + 2)).copied().unwrap_or(0)
}

/// Multiplicity of `V(eta)` in `V(a) ⊗ V(b)`.
pub fn tensor_multiplicity(a: u32, b: u32, eta: u32) -> i64 {
    multiplicity(&product(&character(a), &character(b)), eta)
}

/// Expected dimension of the branching component `(a, b, c, η, λ)`:
/// `V(η) ⊂ V(a) ⊗ V(b)` and then `V(λ) ⊂ V(η) ⊗ V(c)`.
pub fn branching_dimension(a: u32, b: u32, c: u32, eta: u32, lambda: u32) -> i64 {
    tensor_multiplicity(a, b, eta) * tensor_multiplicity(eta, c, lambda)
}
