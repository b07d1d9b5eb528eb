//! Property tests for plus-space bases, Zagier lifts and the duality pairing, including
//! a numerical check of modularity under `τ ↦ −1/τ`.

use greencm::arith::rational::to_f64;
use greencm::arith::{int, rat};
use greencm::whbasis::{duality_bases, level_one_lattice, plus_space_basis, standard_input, zagier_lift, PlusForm, Rep};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// `Σ c(n) e(nτ/4)` over the scalar exponents `n` of one component class.
fn component(f: &PlusForm, tau: Complex64, class: i64) -> Complex64 {
    let i2pi = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    f.q.terms()
        .filter(|(e, _)| e.to_integer().to_i64().unwrap().rem_euclid(4) == class)
        .map(|(e, c)| to_f64(c) * (i2pi * tau * (to_f64(&e) / 4.0)).exp())
        .sum()
}

/// `max_μ |F_μ(−1/τ) − τ^k (ρ(S)F(τ))_μ|` for the level-one Weil matrix
/// `ρ(S) = ε/√2 · (e(∓μν/2))`, `ε = e(∓1/8)` (upper sign for theta-type forms).
fn s_defect(f: &PlusForm, tau: Complex64) -> f64 {
    let classes = match f.rep {
        Rep::Theta => [0, 1],
        Rep::Dual => [0, 3],
    };
    let sign = if f.rep == Rep::Theta { -1.0 } else { 1.0 };
    let e = |x: f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x);
    let eps = e(sign / 8.0) / 2f64.sqrt();
    let k = to_f64(&f.weight);
    let taus = (tau.ln() * k).exp();
    let inv = -1.0 / tau;
    let at_tau = [component(f, tau, classes[0]), component(f, tau, classes[1])];
    let mut worst: f64 = 0.0;
    for (mu, &class) in classes.iter().enumerate() {
        let lhs = component(f, inv, class);
        let rhs: Complex64 = (0..2).map(|nu| eps * e(sign * (mu * nu) as f64 / 2.0) * at_tau[nu]).sum::<Complex64>() * taus;
        worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
    }
    worst
}

#[test]
fn zagier_lifts_are_modular() {
    let tau = Complex64::new(0.13, 1.05);
    let lift = zagier_lift(&standard_input(2, 4).unwrap(), -4, 2, 200).unwrap().form;
    assert!(s_defect(&lift, tau) < 1e-9, "{}", s_defect(&lift, tau));
    let odd = zagier_lift(&standard_input(1, 4).unwrap(), 1, 1, 200).unwrap().form;
    assert!(s_defect(&odd, tau) < 1e-9, "{}", s_defect(&odd, tau));
}

#[test]
fn printed_large_coefficients_break_modularity() {
    let tau = Complex64::new(0.13, 1.05);
    let mut lift = zagier_lift(&standard_input(2, 4).unwrap(), -4, 2, 200).unwrap().form;
    let printed = greencm::arith::QSeries::from_terms(&[(int(4), int(-263832 + 111876)), (int(5), int(-666664 + 362752))], None);
    lift.q = lift.q.add(&printed);
    assert!(s_defect(&lift, tau) > 1e-3, "{}", s_defect(&lift, tau));
}

#[test]
fn plus_space_exponents_respect_the_discriminant_form() {
    for j in [0i64, 1, 2, 3, 4] {
        for f in plus_space_basis(j, 12, 40).unwrap() {
            for (e, _) in f.q.terms() {
                assert!(f.rep.admits(e.to_integer().to_i64().unwrap()), "weight {}: q^{e}", f.weight);
            }
            let vv = f.to_vv(&level_one_lattice());
            // components carry exponents ≡ ∓Q(μ) = ±μ²/4 (mod 1)
            let want = if f.rep == Rep::Theta { rat(1, 4) } else { rat(3, 4) };
            for (e, _) in vv.comps[1].terms() {
                assert_eq!(e.clone() - e.floor(), want);
            }
            for (e, _) in vv.comps[0].terms() {
                assert!(e.is_integer());
            }
            assert_eq!(vv.to_plus().unwrap(), f);
        }
    }
}

#[test]
fn cleared_zagier_lifts_are_integral() {
    for (j, ds) in [(1u32, vec![1i64, 5, 8, 12]), (2, vec![-3, -4, -7, -8]), (4, vec![-3, -4, -7]), (6, vec![-3, -4])] {
        let f = standard_input(j, 4).unwrap();
        for d in ds {
            let lift = zagier_lift(&f, d, j, 30).unwrap().form;
            for (e, c) in lift.q.terms() {
                assert!(c.is_integer(), "j = {j}, d = {d}: coefficient {c} at q^{e}");
            }
        }
    }
}

#[test]
fn duality_on_a_twenty_by_twenty_rectangle() {
    for k in [rat(1, 2), rat(5, 2)] {
        let db = duality_bases(&k, 20, 100).unwrap();
        assert!(db.f.len() >= 20 && db.g.len() >= 20);
        for &m in db.f.keys() {
            for &n in db.g.keys() {
                let a = db.a(m, n).unwrap_or_else(|| panic!("a_{m}({n}) unknown"));
                let b = db.b(n, m).unwrap_or_else(|| panic!("b_{n}({m}) unknown"));
                assert_eq!(a, -b, "k = {k}: m = {m}, n = {n}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifting_is_linear(a in -5i64..6, b in -5i64..6) {
        let f1 = standard_input(2, 6).unwrap();
        let e4 = greencm::whbasis::eisenstein_series(4, 6).unwrap();
        // f2 = E₄⁵/Δ² has weight −4 as well, with a double pole
        let f2 = standard_input(2, 6).unwrap().mul(&e4).mul(&e4).mul(&e4).mul(&greencm::whbasis::delta_inverse(6));
        let comb = greencm::whbasis::ScalarForm { weight: -4, q: f1.q.scale(&int(a)).add(&f2.q.scale(&int(b))) };
        let l1 = zagier_lift(&f1, -3, 2, 12).unwrap().form.q;
        let l2 = zagier_lift(&f2, -3, 2, 12).unwrap().form.q;
        let lc = zagier_lift(&comb, -3, 2, 12).unwrap().form.q;
        prop_assert_eq!(lc, l1.scale(&int(a)).add(&l2.scale(&int(b))));
    }
}
