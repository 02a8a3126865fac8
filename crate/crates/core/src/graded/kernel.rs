//! Null spaces of sparse rational matrices. A rank computation modulo a
//! large prime runs first: full rank mod p implies full rank over ℚ, so only
//! rank-deficient cases pay for exact elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::Rational;

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

fn reduce(q: &Rational) -> Option<u64> {
    let p = BigInt::from(P);
    let m = |x: &BigInt| {
        let r = x % &p;
        let r = if r < BigInt::zero() { r + &p } else { r };
        r.to_u64().unwrap()
    };
    let d = m(q.denom());
    (d != 0).then(|| mul_mod(m(q.numer()), inv_mod(d)))
}

pub(crate) type SparseColumn = BTreeMap<usize, Rational>;

/// Whether the columns are linearly independent, decided mod p when
/// possible. `None` means the modular test was inconclusive.
fn independent_mod_p(cols: &[SparseColumn]) -> Option<bool> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for col in cols {
        let mut v: BTreeMap<usize, u64> = BTreeMap::new();
        for (r, q) in col {
            v.insert(*r, reduce(q)?);
        }
        v.retain(|_, x| *x != 0);
        loop {
            let (&r, &x) = v.iter().next()?;
            match pivots.get(&r) {
                None => {
                    let inv = inv_mod(x);
                    for y in v.values_mut() {
                        *y = mul_mod(*y, inv);
                    }
                    pivots.insert(r, v);
                    break;
                }
                Some(row) => {
                    for (rr, y) in row {
                        let e = v.entry(*rr).or_insert(0);
                        *e = (*e + P - mul_mod(x, *y)) % P;
                    }
                    v.retain(|_, x| *x != 0);
                }
            }
        }
    }
    Some(true)
}

/// A nonzero vector `c` with `Σ cⱼ colⱼ = 0`, if one exists. The returned
/// vector has its last nonzero entry equal to 1 at the first dependent column.
pub(crate) fn kernel_vector(cols: &[SparseColumn]) -> Option<Vec<Rational>> {
    if independent_mod_p(cols) == Some(true) {
        return None;
    }
    // exact: track each reduced column as a combination of the originals
    let n = cols.len();
    let mut pivots: BTreeMap<usize, (SparseColumn, Vec<Rational>)> = BTreeMap::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = vec![Rational::zero(); n];
        combo[j] = Rational::one();
        loop {
            let Some((&r, x)) = v.iter().next() else {
                return Some(combo);
            };
            let x = x.clone();
            match pivots.get(&r) {
                None => {
                    let inv = x.recip();
                    for y in v.values_mut() {
                        *y *= &inv;
                    }
                    for y in combo.iter_mut() {
                        *y *= &inv;
                    }
                    pivots.insert(r, (v, combo));
                    break;
                }
                Some((row, row_combo)) => {
                    for (rr, y) in row {
                        let e = v.entry(*rr).or_insert_with(Rational::zero);
                        *e -= &x * y;
                    }
                    v.retain(|_, y| !y.is_zero());
                    for (c, y) in combo.iter_mut().zip(row_combo) {
                        if !y.is_zero() {
                            *c -= &x * y;
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(entries: &[(usize, i64)]) -> SparseColumn {
        entries
            .iter()
            .map(|&(r, c)| (r, Rational::from_integer(c.into())))
            .collect()
    }

    #[test]
    fn finds_dependencies_exactly() {
        let cols = vec![col(&[(0, 1), (1, 2)]), col(&[(1, 1)]), col(&[(0, 2), (1, 7)])];
        let k = kernel_vector(&cols).unwrap();
        let mut sum: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, column) in k.iter().zip(&cols) {
            for (r, x) in column {
                *sum.entry(*r).or_insert_with(Rational::zero) += c * x;
            }
        }
        assert!(sum.values().all(Zero::is_zero));
        assert_eq!(k[2], Rational::one());
        assert_eq!(kernel_vector(&cols[..2]), None);
        assert_eq!(kernel_vector(&[col(&[])]).unwrap(), vec![Rational::one()]);
    }
}
