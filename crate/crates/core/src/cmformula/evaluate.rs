//! Numerical evaluation of a functional against a coefficient table.

use super::functional::CoefficientFunctional;
use super::setup::CMSetup;
use crate::arith::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::maassfield::{maass_coefficient, CoefficientTable};

/// `prefactor · Σ coeff · c(m, ν)` with `c` read from `table` at `prec` bits.
///
/// The table's lattice must be `N_Δ` in the same basis; labels are translated through
/// the representatives, so the table may use its own generators.
pub fn evaluate_cm_value(setup: &CMSetup, functional: &CoefficientFunctional, table: &CoefficientTable, prec: u32) -> Result<BigReal> {
    if table.lattice.gram() != setup.nd.lattice().gram() {
        return Err(Error::Incompatible(format!(
            "table lattice {:?} differs from N_Δ {:?}",
            table.lattice.gram(),
            setup.nd.lattice().gram()
        )));
    }
    let work = prec + 32;
    let mut acc = BigReal::from_i64(0, work);
    for t in &functional.terms {
        let mu =
            table.group.index_of(&t.rep).ok_or_else(|| Error::Incompatible(format!("class {:?} is not in the table's group", t.rep)))?;
        let c = maass_coefficient(table, &t.m, mu, work)?;
        acc = &acc + &(&BigReal::from_rational(&t.coeff, work) * &c);
    }
    let v = &acc * &functional.prefactor.to_big(work);
    Ok(BigReal(rug::Float::with_val(prec, &v.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmformula::{build_cm_setup, formula_functional};
    use crate::maassfield::{galois_act, load_table, GaloisMove};
    use crate::whbasis::standard_input;

    fn table(name: &str) -> CoefficientTable {
        load_table(format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
    }

    fn value(d2: i64, delta: i64, d1: i64, j: u32, t: &CoefficientTable) -> f64 {
        let s = build_cm_setup(d2, delta, d1, j).unwrap();
        let f = formula_functional(&s, &standard_input(j, 4).unwrap(), 4).unwrap();
        evaluate_cm_value(&s, &f, t, 128).unwrap().to_f64()
    }

    #[test]
    fn example_values() {
        let t23 = table("table-23.json");
        assert!((value(-23, 1, -4, 2, &t23) + 1.000394556341).abs() < 1e-10);
        assert!((value(-23, 1, -4, 4, &t23) + 0.0869366459199).abs() < 1e-10);
        let v6 = value(-23, 1, -4, 6, &t23);
        assert!((v6 + 0.0101643901834).abs() < 2e-5 * 0.0101643901834, "{v6}");
        let t63 = table("table-63.json");
        assert!((value(-7, -3, 1, 1, &t63) - 3.0 * -2.928818048619).abs() < 1e-9);
    }

    #[test]
    fn conjugate_points() {
        let t23 = table("table-23.json");
        let root = t23.field.roots_f64().iter().copied().find(|r| r.1 > 1e-6).unwrap();
        let moved = galois_act(&t23, &GaloisMove::repin(root.0, root.1)).unwrap();
        let v = value(-23, 1, -4, 2, &moved);
        assert!((v + 3.854054384748).abs() < 1e-8, "{v}");
    }
}
