use tropval_core::cones::{arrow_check, cone_sum, implies_check, scale};
use tropval_core::sample::{rng, sample_pairs, SampleConfig};
use tropval_core::trop::trop_add;
use tropval_core::valuation::{
    check_axioms, check_trop_membership, has_two_max_terms, make_weight_valuation, tropicalize, MembershipMode, Verdict,
};
use tropval_core::{Rational, WeightVector};
use tropval_testkit::fixtures::{free_plane, line, random_ideal_element, rational, tropical_fixtures, weight_grid};

#[test]
fn tropicalized_valuations_are_tropical_points() {
    for (name, p) in tropical_fixtures() {
        let mut valuations = 0;
        let mut r = rng(17);
        for w in weight_grid(p.ring().dim(), -1, 1) {
            let Ok(v) = make_weight_valuation(&p, &w) else { continue };
            if check_axioms(&v, 2, 120, 3).unwrap().verdict != Verdict::Valuation {
                continue;
            }
            valuations += 1;
            let t = tropicalize(&v).unwrap();
            let m = check_trop_membership(&p, &t, MembershipMode::Certified).unwrap();
            assert!(m.member, "{name}: {t} has monomial {:?}", m.witness);
            for _ in 0..10 {
                let f = random_ideal_element(&mut r, &p, 2);
                assert!(has_two_max_terms(&f, &t), "{name}: {f} at {t}");
            }
        }
        assert!(valuations >= 2, "{name}: only {valuations} valuations");
    }
}

#[test]
fn strict_drops_only_between_equal_values() {
    for (name, p) in tropical_fixtures() {
        for w in weight_grid(p.ring().dim(), -1, 1) {
            let Ok(v) = make_weight_valuation(&p, &w) else { continue };
            if check_axioms(&v, 4, 150, 3).unwrap().verdict != Verdict::Valuation {
                continue;
            }
            for (a, b) in sample_pairs(p.ring(), 9, 150, 3) {
                let (va, vb) = (v.evaluate(&a).unwrap(), v.evaluate(&b).unwrap());
                let vs = v.evaluate(&a.add(&b).unwrap()).unwrap();
                let max = trop_add(&va, &vb);
                assert!(vs <= max, "{name} {w}: ({a}, {b})");
                if vs < max {
                    assert_eq!(va, vb, "{name} {w}: ({a}, {b})");
                }
            }
        }
    }
}

#[test]
fn polynomial_ring_in_one_variable() {
    let p = tropval_testkit::fixtures::presentation("ring t;", &[]);
    let mut r = rng(23);
    for vt in [rational(1, 1), rational(2, 1), rational(7, 3)] {
        let v = make_weight_valuation(&p, &WeightVector::new(vec![vt.clone()])).unwrap();
        for _ in 0..30 {
            let f = tropval_core::sample::random_poly(&mut r, p.ring(), 9);
            let d = Rational::from_integer(f.degree().unwrap().into());
            assert_eq!(v.evaluate(&f).unwrap(), tropval_core::TropicalValue::Finite(&vt * d));
        }
        let report = check_axioms(&v, 1, 200, 8).unwrap();
        assert_eq!(report.verdict, Verdict::Valuation);
        assert!(report.exact);
    }
}

fn config(seed: u64) -> SampleConfig {
    SampleConfig {
        seed,
        samples: 120,
        degree_bound: 3,
    }
}

#[test]
fn certified_implication_gives_arrow_and_cone_sums() {
    for p in [free_plane(), line()] {
        for w in weight_grid(2, -1, 1) {
            let Ok(v) = make_weight_valuation(&p, &w) else { continue };
            if check_axioms(&v, 3, 120, 3).unwrap().verdict != Verdict::Valuation {
                continue;
            }
            for c in [rational(0, 1), rational(1, 2), rational(3, 1)] {
                let cw = WeightVector::new(w.weights().iter().map(|x| x * &c).collect());
                let wv = make_weight_valuation(&p, &cw).unwrap();
                let imp = implies_check(&v, &wv, &config(1), true).unwrap();
                assert!(imp.is_certified(), "{w} => {cw}");
                assert!(!arrow_check(&p, &w, &cw).unwrap().is_refuted(), "{w} -> {cw}");
                let sum = cone_sum(&v, &v, &wv, &config(2)).unwrap();
                assert_eq!(sum.axioms.verdict, Verdict::Valuation);
                assert!(!sum.implies.is_refuted());
            }
            let three = scale(&v, &rational(3, 1)).unwrap();
            assert_eq!(three.same_facet, Some(true));
        }
    }
}

#[test]
fn exact_mode_refutes_off_ray_weights_on_free_algebras() {
    let p = free_plane();
    let v = make_weight_valuation(&p, &WeightVector::from_ints(&[1, 2])).unwrap();
    for other in [[2, 1], [-1, -2], [1, 0]] {
        let w = make_weight_valuation(&p, &WeightVector::from_ints(&other)).unwrap();
        let verdict = implies_check(&v, &w, &config(1), true).unwrap();
        assert!(verdict.is_refuted(), "{other:?}");
    }
}
