//! Property tests for lattices, discriminant forms and the Weil representation.

use greencm::arith::{int, QSeries, Rational};
use greencm::discforms::{level_one_embedded, psi_delta, restrict_to_sublattice, weil_rep_generators, EmbeddedLattice, EvenLattice};
use greencm::qforms::genus::genus_character_vector;
use proptest::prelude::*;

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

#[allow(clippy::needless_range_loop)]
fn even_gram() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n), prop::collection::vec(-3i64..=3, n * (n - 1) / 2)))
        .prop_map(|(n, diag, off)| {
            let mut g = vec![vec![0; n]; n];
            let mut k = 0;
            for i in 0..n {
                g[i][i] = 2 * diag[i];
                for j in i + 1..n {
                    g[i][j] = off[k];
                    g[j][i] = off[k];
                    k += 1;
                }
            }
            g
        })
        .prop_filter("nondegenerate", |g| det(g) != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_order_is_determinant(g in even_gram()) {
        let l = EvenLattice::new(g.clone()).unwrap();
        prop_assert_eq!(l.discriminant_group().unwrap().order() as i64, det(&g).abs());
    }

    #[test]
    fn weil_generators_are_unitary(g in even_gram()) {
        let l = EvenLattice::new(g).unwrap();
        let group = l.discriminant_group().unwrap();
        prop_assume!(group.order() <= 60);
        let (t, s) = weil_rep_generators(&group);
        let n = group.order();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert!(t[i][j].norm() < 1e-14);
                }
                let zero = s[0][0] * 0.0;
                let dot = (0..n).fold(zero, |acc, k| acc + s[i][k] * s[j][k].conj());
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot.re - want).abs() < 1e-12 && dot.im.abs() < 1e-12);
            }
            prop_assert!((t[i][i].norm() - 1.0).abs() < 1e-14);
        }
        // S² sends φ_μ to a unimodular multiple of φ_{−μ}
        for mu in 0..n {
            let neg = group.neg(mu);
            for nu in 0..n {
                let e = (0..n).fold(s[0][0] * 0.0, |acc, k| acc + s[nu][k] * s[k][mu]);
                let want = if nu == neg { 1.0 } else { 0.0 };
                prop_assert!((e.norm() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn restriction_is_linear_and_keeps_order(
        a in prop::collection::vec(-5i64..6, 1..5),
        b in prop::collection::vec(-5i64..6, 1..5),
        k in -4i64..5,
        order in 3i64..8,
    ) {
        let l = level_one_embedded();
        let m = sublattice();
        let f = vec![QSeries::from_int_coeffs(-1, &a, Some(order)), QSeries::from_int_coeffs(0, &b, Some(order))];
        let g = vec![QSeries::from_int_coeffs(0, &b, Some(order)), QSeries::from_int_coeffs(-1, &a, Some(order))];
        let comb: Vec<QSeries> = f.iter().zip(&g).map(|(x, y)| x.scale(&int(k)).add(y)).collect();
        let rf = restrict_to_sublattice(&f, &l, &m).unwrap();
        let rg = restrict_to_sublattice(&g, &l, &m).unwrap();
        let rc = restrict_to_sublattice(&comb, &l, &m).unwrap();
        for i in 0..rc.len() {
            prop_assert_eq!(&rc[i], &rf[i].scale(&int(k)).add(&rg[i]));
            if !rf[i].is_zero() {
                prop_assert_eq!(rf[i].order(), Some(int(order)));
            }
        }
    }
}

/// `{(a, b, c) ∈ L : c even}`, of index two in the level-one lattice.
fn sublattice() -> EmbeddedLattice {
    let l = level_one_embedded();
    let basis = vec![vec![int(1), int(0), int(0)], vec![int(0), int(2), int(0)], vec![int(0), int(0), int(2)]];
    EmbeddedLattice::new(l.space_gram().clone(), basis).unwrap()
}

#[test]
fn psi_intertwines_the_translation() {
    let l = level_one_embedded();
    let (t, _) = weil_rep_generators(l.group());
    for (delta, r) in [(1, 1), (5, 1), (-3, 1), (-4, 0), (-7, 1), (8, 0)] {
        let ld = l.rescaled(delta).unwrap();
        let (td, _) = weil_rep_generators(ld.group());
        let psi = psi_delta(&l, &ld, delta, r, |v: &[Rational]| genus_character_vector(delta, v)).unwrap();
        let mut entries = 0;
        for (mu, img) in psi.images.iter().enumerate() {
            for &(d, _) in img {
                let want = if delta > 0 { t[mu][mu] } else { t[mu][mu].conj() };
                assert!((td[d][d] - want).norm() < 1e-13, "Δ = {delta}: μ = {mu}, δ = {d}");
                entries += 1;
            }
        }
        assert!(entries > 0, "ψ_Δ vanishes for Δ = {delta}");
    }
}
