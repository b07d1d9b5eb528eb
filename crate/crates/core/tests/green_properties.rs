//! Property tests for the direct evaluation of Green functions.

use greencm::greeneval::{green_hecke, UHPoint};
use proptest::prelude::*;

/// `SL₂(ℤ)` elements with entries bounded by 20, as words in `T^k S`.
fn gamma() -> impl Strategy<Value = [i64; 4]> {
    prop::collection::vec(-3i64..4, 1..4)
        .prop_map(|ks| {
            ks.iter().fold([1, 0, 0, 1], |[a, b, c, d], &k| {
                // (a b; c d)·(1 k; 0 1)·(0 −1; 1 0) = (ak+b, −a; ck+d, −c)
                [a * k + b, -a, c * k + d, -c]
            })
        })
        .prop_filter("height at most 20", |g| g.iter().all(|x| x.abs() <= 20))
}

fn point() -> impl Strategy<Value = UHPoint> {
    (-0.5f64..0.5, 0.9f64..1.8).prop_map(|(x, y)| UHPoint::new(x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn invariant_under_the_modular_group(g in gamma(), z1 in point(), z2 in point()) {
        prop_assume!(z1.cosh_dist(&z2) > 1.05);
        let tol = 1e-8;
        let base = green_hecke(3.0, 1, &z1, &z2, tol).unwrap();
        let moved = green_hecke(3.0, 1, &z1.moebius(g[0], g[1], g[2], g[3]), &z2, tol).unwrap();
        prop_assert!((base.value - moved.value).abs() < 2.0 * tol, "{} vs {}", base.value, moved.value);
    }

    #[test]
    fn symmetric_in_the_two_points(z1 in point(), z2 in point(), s in 2.0f64..4.0) {
        prop_assume!(z1.cosh_dist(&z2) > 1.05);
        let tol = 1e-8;
        let a = green_hecke(s, 1, &z1, &z2, tol).unwrap().value;
        let b = green_hecke(s, 1, &z2, &z1, tol).unwrap().value;
        prop_assert!((a - b).abs() < 2.0 * tol);
    }

    #[test]
    fn certified_error_is_honest(z1 in point(), z2 in point()) {
        // a value certified to 1e−6 lies within 1e−6 of one certified to 1e−10
        prop_assume!(z1.cosh_dist(&z2) > 1.05);
        let rough = green_hecke(3.0, 2, &z1, &z2, 1e-6).unwrap();
        let fine = green_hecke(3.0, 2, &z1, &z2, 1e-10).unwrap();
        prop_assert!(rough.error < 1e-6);
        prop_assert!((rough.value - fine.value).abs() < 1e-6 + 1e-10);
    }
}

#[test]
fn conjugate_values_sum_to_the_average() {
    let i = UHPoint::new(0.0, 1.0).unwrap();
    let r = 23f64.sqrt();
    let tol = 1e-9;
    let pts = [UHPoint::new(-0.5, r / 2.0).unwrap(), UHPoint::new(0.25, r / 4.0).unwrap(), UHPoint::new(-0.25, r / 4.0).unwrap()];
    let total: f64 = pts.iter().map(|p| green_hecke(3.0, 1, &i, p, tol).unwrap().value).sum();
    assert!((total + 8.708503325837).abs() < 3.0 * tol + 1e-11, "{total}");
}
