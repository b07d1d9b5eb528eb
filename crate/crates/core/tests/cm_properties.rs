//! Properties of the exact CM-value functional and its evaluation.

use greencm::arith::{int, Surd};
use greencm::cmformula::{build_cm_setup, evaluate_cm_value, formula_functional, CMSetup, CoefficientFunctional};
use greencm::maassfield::{load_table, maass_coefficient, CoefficientTable};
use greencm::whbasis::standard_input;

fn table(name: &str) -> CoefficientTable {
    load_table(format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn cases() -> Vec<(CMSetup, CoefficientFunctional, &'static str)> {
    [(-23, 1, -4, 2, "table-23.json"), (-23, 1, -4, 4, "table-23.json"), (-23, 1, -4, 6, "table-23.json"), (-7, -3, 1, 1, "table-63.json")]
        .into_iter()
        .map(|(d2, delta, d1, j, t)| {
            let s = build_cm_setup(d2, delta, d1, j).unwrap();
            let f = formula_functional(&s, &standard_input(j, 4).unwrap(), 4).unwrap();
            (s, f, t)
        })
        .collect()
}

#[test]
fn scaled_coefficients_are_integers() {
    for (s, f, _) in cases() {
        let scale = Surd::sqrt(&int((s.d1 * s.d2 * s.delta).abs().pow(s.j))).unwrap().mul(&f.prefactor);
        for t in &f.terms {
            let c = scale.scale(&t.coeff);
            assert!(c.radicand == 1.into() && c.coeff.is_integer(), "j = {}: {} at m = {}", s.j, c, t.m);
        }
    }
}

#[test]
fn indices_are_admissible() {
    for (s, f, _) in cases() {
        let g = s.nd.group();
        for t in &f.terms {
            let idx = g.index_of(&t.rep).unwrap();
            assert!(!(t.m == int(0) && idx == 0), "κ(0, 0) must not occur");
            assert!((&t.m - g.q(idx)).is_integer(), "m = {} in class {:?}", t.m, t.coords);
            assert!(t.m >= s.m_min);
        }
    }
}

#[test]
fn doubling_precision_is_consistent() {
    for (s, f, name) in cases() {
        let t = table(name);
        for prec in [64u32, 128, 256] {
            let a = evaluate_cm_value(&s, &f, &t, prec).unwrap();
            let b = evaluate_cm_value(&s, &f, &t, 2 * prec).unwrap();
            let diff = rug::Float::with_val(2 * prec, &a.0 - &b.0).abs();
            let bound = rug::Float::with_val(2 * prec, rug::Float::i_exp(1, 1 - prec as i32)) * (a.0.clone().abs() + 1u32);
            assert!(diff <= bound, "j = {}, prec {prec}", s.j);
        }
    }
}

#[test]
fn table_coefficients_are_even_in_the_class() {
    for name in ["table-23.json", "table-63.json"] {
        let t = table(name);
        let mut checked = 0;
        for (m, mu) in t.entries.keys() {
            let neg = t.group.neg(*mu);
            let a = maass_coefficient(&t, m, *mu, 128).unwrap();
            let b = maass_coefficient(&t, m, neg, 128).unwrap();
            assert_eq!(a.0, b.0, "{name}: m = {m}");
            checked += 1;
        }
        assert!(checked > 0);
    }
}
