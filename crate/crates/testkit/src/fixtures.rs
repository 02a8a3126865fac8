//! Presentations and weight grids shared by the test suites and benches.

use tropval_core::poly::{parse_poly, parse_ring, CoeffValuation};
use tropval_core::sample::{random_poly, SampleRng};
use tropval_core::{Polynomial, Presentation, Rational, WeightVector};

pub fn presentation(ring: &str, ideal: &[&str]) -> Presentation {
    let ring = parse_ring(ring).expect("ring");
    let gens = ideal
        .iter()
        .map(|g| parse_poly(&ring, g).expect("polynomial"))
        .collect();
    Presentation::new(ring, gens, CoeffValuation::Trivial).expect("presentation")
}

pub fn line() -> Presentation {
    presentation("ring x y;", &["x + y + 1"])
}

pub fn free_plane() -> Presentation {
    presentation("ring x y;", &[])
}

/// Ideals with a nonempty tropical variety, named.
pub fn tropical_fixtures() -> Vec<(&'static str, Presentation)> {
    vec![
        ("line", line()),
        ("hyperbola", presentation("ring x y;", &["x*y - 1"])),
        ("twisted cubic", presentation("ring x y z;", &["x^2 - y", "x^3 - z"])),
        ("circle", presentation("ring x y;", &["x^2 + y^2 - 1"])),
        ("quadric cone", presentation("ring x y z;", &["x*z - y^2"])),
    ]
}

/// All integer weights in `[lo, hi]^n`.
pub fn weight_grid(n: usize, lo: i64, hi: i64) -> Vec<WeightVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.iter().map(|w| WeightVector::from_ints(w)).collect()
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// A nonzero element `Σ hᵢ gᵢ` of the ideal with random multipliers.
pub fn random_ideal_element(rng: &mut SampleRng, p: &Presentation, degree_bound: u32) -> Polynomial {
    loop {
        let mut f = Polynomial::zero(p.ring());
        for g in p.ideal_gens() {
            let h = random_poly(rng, p.ring(), degree_bound);
            f = f.add(&h.mul(g).unwrap()).unwrap();
        }
        if !f.is_zero() {
            return f;
        }
    }
}
