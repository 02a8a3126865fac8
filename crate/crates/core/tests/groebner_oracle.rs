use rand::Rng;

use tropval_core::groebner::{buchberger, MonomialOrder};
use tropval_core::poly::RingContext;
use tropval_core::sample::{random_poly, rng, SampleRng};
use tropval_core::{Polynomial, WeightVector};
use tropval_testkit::macaulay::MacaulayMatrix;

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_ideal(r: &mut SampleRng) -> (RingContext, Vec<Polynomial>) {
    let n = r.gen_range(1..=3);
    let ring = RingContext::new(VARS[..n].iter().copied()).unwrap();
    let k = r.gen_range(1..=3);
    let gens = (0..k).map(|_| random_poly(r, &ring, 4)).collect();
    (ring, gens)
}

/// `Σ hᵢ gᵢ` with every product of degree at most `d`.
fn ideal_element(r: &mut SampleRng, ring: &RingContext, gens: &[Polynomial], d: u32) -> Polynomial {
    let mut f = Polynomial::zero(ring);
    for g in gens {
        let dg = g.degree().unwrap() as u32;
        if dg <= d {
            f = f.add(&random_poly(r, ring, d - dg).mul(g).unwrap()).unwrap();
        }
    }
    f
}

fn orders(n: usize) -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::grevlex(n),
        MonomialOrder::lex(n),
        MonomialOrder::weighted(&WeightVector::from_ints(&[2, 1, 3][..n])).unwrap(),
    ]
}

#[test]
fn normal_form_membership_matches_linear_algebra() {
    for seed in 0..12 {
        let mut r = rng(seed);
        let (ring, gens) = random_ideal(&mut r);
        let n = ring.dim();
        let grevlex = buchberger(&ring, &gens, &MonomialOrder::grevlex(n)).unwrap();
        // the reduced basis spans the same ideal: every element lies in the
        // span of the original generators at some degree, and conversely
        for g in grevlex.gens() {
            let found = (0..=10).any(|d| MacaulayMatrix::new(&gens, n, d).contains(g) == Some(true));
            assert!(found, "seed {seed}: {g} not reached");
        }
        let bases: Vec<_> = orders(n).iter().map(|o| buchberger(&ring, &gens, o).unwrap()).collect();
        for d in 0..=6 {
            // with a degree-compatible order, membership in degree ≤ d is
            // decided by the basis elements of degree ≤ d
            let exact = MacaulayMatrix::new(grevlex.gens(), n, d);
            let sound = MacaulayMatrix::new(&gens, n, d);
            for k in 0..6 {
                let f = if k % 2 == 0 {
                    ideal_element(&mut r, &ring, &gens, d)
                } else {
                    random_poly(&mut r, &ring, d)
                };
                let f = if k == 3 {
                    f.add(&ideal_element(&mut r, &ring, &gens, d)).unwrap()
                } else {
                    f
                };
                if f.degree().unwrap_or(0) > d as u64 {
                    continue;
                }
                let truth = exact.contains(&f).unwrap();
                if sound.contains(&f).unwrap() {
                    assert!(truth);
                }
                for gb in &bases {
                    assert_eq!(gb.contains(&f).unwrap(), truth, "seed {seed}, {f}, {:?}", gb.order());
                }
            }
        }
    }
}
