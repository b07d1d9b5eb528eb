//! Independent confirmation of the closed formula: the same CM value computed by summing
//! the Green function directly over the twisted Heegner divisor.

use serde::Serialize;

use super::evaluate::evaluate_cm_value;
use super::functional::formula_functional;
use super::setup::CMSetup;
use crate::arith::rational::to_f64;
use crate::error::Result;
use crate::greeneval::{green_divisor, UHPoint};
use crate::maassfield::CoefficientTable;
use crate::whbasis::ScalarForm;

/// Outcome of [`crosscheck_direct`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    /// Value of the closed formula.
    pub formula: f64,
    /// Value of the direct lattice sum.
    pub direct: f64,
    /// Certified error bound of the direct sum.
    pub direct_error: f64,
    /// `|formula − direct|`.
    pub difference: f64,
    /// Tolerance the difference is held to.
    pub tolerance: f64,
    /// `difference < tolerance`.
    pub pass: bool,
}

/// Evaluates the formula for `f` against `table` and compares it with
/// `Σ_{P ∈ Z_Δ(m₁)} w_P G_{1+j,f}(P, z₂)` (divided by the point weight when the formula
/// is normalized to a single point), with `z₂` the CM point of the setup.
pub fn crosscheck_direct(setup: &CMSetup, f: &ScalarForm, table: &CoefficientTable, tol: f64) -> Result<CrosscheckReport> {
    let (x, y) = setup.z2();
    crosscheck_direct_at(setup, f, table, &UHPoint::new(x, y)?, tol)
}

/// [`crosscheck_direct`] at an explicit second point, e.g. a Galois conjugate of `z₂`
/// matching a re-pinned table.
pub fn crosscheck_direct_at(setup: &CMSetup, f: &ScalarForm, table: &CoefficientTable, z2: &UHPoint, tol: f64) -> Result<CrosscheckReport> {
    let functional = formula_functional(setup, f, 4)?;
    let formula = evaluate_cm_value(setup, &functional, table, 128)?.to_f64();
    let scale = match (functional.point_level, setup.point_weight()) {
        (true, Some(w)) => 1.0 / to_f64(&w),
        _ => 1.0,
    };
    let direct = if setup.divisor_is_empty() {
        crate::greeneval::GreenValue { value: 0.0, error: 0.0, cutoff: 0.0, terms: 0 }
    } else {
        green_divisor(setup.j, f, &setup.divisor, z2, tol / (4.0 * scale))?
    };
    let difference = (formula - scale * direct.value).abs();
    Ok(CrosscheckReport {
        formula,
        direct: scale * direct.value,
        direct_error: scale * direct.error,
        difference,
        tolerance: tol,
        pass: difference < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qseries::QSeries;
    use crate::arith::rational::int;
    use crate::cmformula::build_cm_setup;
    use crate::maassfield::load_table;
    use crate::whbasis::standard_input;

    fn table(name: &str) -> CoefficientTable {
        load_table(format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
    }

    #[test]
    fn first_example_end_to_end() {
        let s = build_cm_setup(-23, 1, -4, 2).unwrap();
        let r = crosscheck_direct(&s, &standard_input(2, 4).unwrap(), &table("table-23.json"), 1e-8).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn higher_weights_end_to_end() {
        let t = table("table-23.json");
        for j in [4, 6] {
            let s = build_cm_setup(-23, 1, -4, j).unwrap();
            let r = crosscheck_direct(&s, &standard_input(j, 4).unwrap(), &t, 1e-8).unwrap();
            assert!(r.pass, "j = {j}: {r:?}");
        }
    }

    #[test]
    fn twisted_example_end_to_end() {
        let s = build_cm_setup(-7, -3, 1, 1).unwrap();
        let r = crosscheck_direct(&s, &standard_input(1, 4).unwrap(), &table("table-63.json"), 1e-7).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn zero_input() {
        let s = build_cm_setup(-23, 1, -4, 2).unwrap();
        let f = ScalarForm { weight: -4, q: QSeries::zero(&int(4)) };
        let r = crosscheck_direct(&s, &f, &table("table-23.json"), 1e-8).unwrap();
        assert_eq!((r.formula, r.direct), (0.0, 0.0));
        assert!(r.pass);
    }
}
