//! Property tests for binary quadratic forms, genus characters and Heegner divisors.

use greencm::arith::rational::{is_fundamental_discriminant, kronecker};
use greencm::arith::{int, rat, Rational};
use greencm::qforms::{
    class_number, class_representatives, genus_character, genus_character_vector, reduce_form, stabilizer_order, twisted_divisor, BQF,
};
use proptest::prelude::*;

/// `SL₂(ℤ)` element from a word in `T^k` and `S`.
fn word(ks: &[i64]) -> [[i64; 2]; 2] {
    let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
        [
            [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
            [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
        ]
    };
    ks.iter().fold([[1, 0], [0, 1]], |g, &k| mul(mul(g, [[1, k], [0, 1]]), [[0, -1], [1, 0]]))
}

fn positive_form() -> impl Strategy<Value = BQF> {
    (1i64..40, -40i64..40, 1i64..40).prop_map(|(a, b, c)| BQF::new(a, b, c)).prop_filter("definite", |f| f.disc() < 0)
}

/// Class number from the analytic class number formula and the conductor formula, used
/// as an oracle independent of form reduction.
fn class_number_oracle(d: i64) -> usize {
    let (mut d0, mut f) = (d, 1i64);
    for p in 2..=((-d) as f64).sqrt() as i64 + 1 {
        while d0 % (p * p) == 0 && matches!((d0 / (p * p)).rem_euclid(4), 0 | 1) {
            d0 /= p * p;
            f *= p;
        }
    }
    assert!(is_fundamental_discriminant(d0), "{d} = {d0}·{f}²");
    let w = |d: i64| match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let s: i64 = (1..-d0).map(|n| kronecker(d0, n) as i64 * n).sum();
    let h0 = Rational::from_integer((-w(d0) * s).into()) / int(2 * (-d0));
    let mut h = h0 * int(f) / int(w(d0) / w(d));
    let mut m = f;
    for p in 2..=f {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            h *= int(1) - rat(kronecker(d0, p) as i64, p);
        }
    }
    assert!(h.is_integer());
    h.to_integer().try_into().unwrap()
}

#[test]
fn class_numbers_match_the_analytic_formula() {
    for n in 3..=400i64 {
        let d = -n;
        if !matches!(d.rem_euclid(4), 0 | 1) {
            continue;
        }
        assert_eq!(class_number(d).unwrap(), class_number_oracle(d), "D = {d}");
        let reps = class_representatives(d).unwrap();
        for (i, f) in reps.iter().enumerate() {
            assert!(f.is_reduced() && f.disc() == d);
            assert!(reps[i + 1..].iter().all(|g| g != f));
        }
    }
}

#[test]
fn heegner_divisors_are_class_sets() {
    for d in [-3i64, -4, -7, -23, -47, -71, -84, -95, -164] {
        let div = twisted_divisor(1, 1, &rat(-d, 4)).unwrap();
        let reps = class_representatives(d).unwrap();
        assert_eq!(div.len(), reps.len(), "D = {d}");
        for (w, p) in &div.points {
            assert!(reps.contains(p.form()));
            assert_eq!(*w, rat(2, stabilizer_order(p.form()).unwrap() as i64));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_preserves_the_discriminant(f in positive_form()) {
        let h = reduce_form(&f).unwrap();
        prop_assert_eq!(h.disc(), f.disc());
        prop_assert!(h.b.abs() <= h.a && h.a <= h.c);
        prop_assert!(h.is_reduced());
    }

    #[test]
    fn reduction_is_a_class_invariant(f in positive_form(), ks in prop::collection::vec(-6i64..7, 1..6)) {
        prop_assert_eq!(reduce_form(&f.transform(word(&ks))).unwrap(), reduce_form(&f).unwrap());
    }

    #[test]
    fn genus_character_is_a_class_invariant(
        idx in 0usize..6,
        f in positive_form(),
        ks in prop::collection::vec(-6i64..7, 1..6),
    ) {
        let delta = [-3i64, -4, 5, -7, 8, 12][idx];
        prop_assume!(f.disc() % delta == 0 && matches!((f.disc() / delta).rem_euclid(4), 0 | 1));
        for k in 0..20 {
            let g = word(&[ks.clone(), vec![k - 10]].concat());
            prop_assert_eq!(genus_character(delta, &f.transform(g)), genus_character(delta, &f));
        }
    }

    #[test]
    fn genus_character_parity_under_negation(idx in 0usize..6, a in -30i64..30, b in -30i64..30, c in -30i64..30) {
        let delta = [-3i64, -4, 5, -7, 8, -20][idx];
        let v = [int(a), int(b), int(c)];
        let w = [int(-a), int(-b), int(-c)];
        let (x, y) = (genus_character_vector(delta, &v), genus_character_vector(delta, &w));
        if delta < 0 {
            prop_assert_eq!(y, -x);
        } else {
            prop_assert_eq!(y, x);
        }
    }
}
