//! Property tests for theta series, Rankin–Cohen brackets and the constant-term pairing.

use greencm::arith::{int, rat, QSeries, Rational};
use greencm::discforms::EvenLattice;
use greencm::thetablocks::{ct_pair, rankin_cohen, theta_series};
use proptest::prelude::*;

fn definite_gram() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop_oneof![
        (1i64..5).prop_map(|a| vec![vec![2 * a]]),
        (1i64..4, -3i64..4, 1i64..4)
            .prop_filter("positive definite", |(a, b, c)| 4 * a * c - b * b > 0)
            .prop_map(|(a, b, c)| vec![vec![2 * a, b], vec![b, 2 * c]]),
    ]
}

fn series(den: i64) -> impl Strategy<Value = QSeries> {
    (-4i64..2, prop::collection::vec(-7i64..8, 1..7)).prop_map(move |(start, c)| {
        let coeffs = c.into_iter().map(int).collect();
        QSeries::from_parts(den, start, coeffs, Some(start + 8))
    })
}

/// Series with poles of order at most 2, known to `q^6`, so every pairing is determined.
fn paired_series() -> impl Strategy<Value = QSeries> {
    (-2i64..2, prop::collection::vec(-7i64..8, 1..7)).prop_map(|(start, c)| QSeries::from_int_coeffs(start, &c, Some(6)))
}

fn weight() -> impl Strategy<Value = Rational> {
    (-5i64..8).prop_map(|n| rat(n, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn theta_coefficients_count_lattice_vectors(g in definite_gram()) {
        let order = int(7);
        let l = EvenLattice::new(g.clone()).unwrap();
        let th = theta_series(&l, &order).unwrap();
        let n = g.len();
        // Q ≥ λ_min |x|²/2 with λ_min ≥ det/trace^{n−1} bounds the box
        let det = if n == 1 { g[0][0] as f64 } else { (g[0][0] * g[1][1] - g[0][1] * g[1][0]) as f64 };
        let tr: f64 = (0..n).map(|i| g[i][i] as f64).sum();
        let lmin = if n == 1 { det } else { det / tr };
        let r = ((2.0 * 7.0 / lmin).sqrt()).ceil() as i64 + 2;
        for mu in 0..th.group.order() {
            let rep = th.group.representative(mu).to_vec();
            let mut counts = std::collections::BTreeMap::<Rational, i64>::new();
            let mut x = vec![-r; n];
            loop {
                let v: Vec<Rational> = rep.iter().zip(&x).map(|(a, b)| a + int(*b)).collect();
                let q = l.q(&v);
                if q < order {
                    *counts.entry(q).or_default() += 1;
                }
                let mut i = 0;
                while i < n && x[i] == r {
                    x[i] = -r;
                    i += 1;
                }
                if i == n {
                    break;
                }
                x[i] += 1;
            }
            for (q, c) in &counts {
                prop_assert_eq!(th.components[mu].coeff(q).unwrap_or_default(), int(*c), "μ = {}, q^{}", mu, q);
            }
            for (e, c) in th.components[mu].terms() {
                prop_assert_eq!(int(counts.get(&e).copied().unwrap_or(0)), c.clone());
            }
        }
    }

    #[test]
    fn brackets_are_bilinear(f in series(4), h in series(4), g in series(4), k in weight(), l in weight(), n in 0u32..4) {
        let lhs = rankin_cohen(&f.add(&h), &k, &g, &l, n);
        let rhs = rankin_cohen(&f, &k, &g, &l, n).add(&rankin_cohen(&h, &k, &g, &l, n));
        prop_assert_eq!(lhs, rhs);
        let c = rat(3, 7);
        prop_assert_eq!(rankin_cohen(&f, &k, &g.scale(&c), &l, n), rankin_cohen(&f, &k, &g, &l, n).scale(&c));
    }

    #[test]
    fn equal_weight_brackets_are_graded_symmetric(f in series(2), g in series(2), k in weight(), n in 0u32..5) {
        let fg = rankin_cohen(&f, &k, &g, &k, n);
        let gf = rankin_cohen(&g, &k, &f, &k, n);
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(fg, gf.scale(&sign));
    }

    #[test]
    fn bracket_exponents_stay_in_their_classes(a in 0i64..4, b in 0i64..4, f in series(1), g in series(1), n in 0u32..4) {
        // f supported on a/4 + ℤ, g on b/4 + ℤ
        let fs = f.shift(&rat(a, 4));
        let gs = g.shift(&rat(b, 4));
        let br = rankin_cohen(&fs, &rat(1, 2), &gs, &int(1), n);
        for (e, _) in br.terms() {
            let r = e - rat(a + b, 4);
            prop_assert!(r.is_integer());
        }
    }

    #[test]
    fn pairing_is_symmetric_and_linear(
        f in prop::collection::vec(paired_series(), 2),
        g in prop::collection::vec(paired_series(), 2),
        h in prop::collection::vec(paired_series(), 2),
        c in -6i64..7,
    ) {
        let fg = ct_pair(&f, &g).unwrap();
        prop_assert_eq!(&fg, &ct_pair(&g, &f).unwrap());
        let comb: Vec<QSeries> = f.iter().zip(&h).map(|(x, y)| x.scale(&int(c)).add(y)).collect();
        let lhs = ct_pair(&comb, &g).unwrap();
        prop_assert_eq!(lhs, fg * int(c) + ct_pair(&h, &g).unwrap());
    }
}

#[test]
fn pairing_detects_missing_terms() {
    let f = vec![QSeries::from_int_coeffs(-6, &[1], Some(2))];
    let g = vec![QSeries::from_int_coeffs(0, &[1, 1, 1], Some(3))];
    assert!(ct_pair(&f, &g).is_err());
}
