//! The worked examples with their published reference data: coefficient vectors (as
//! displayed, including any display scaling) and numerical CM values, plus the two
//! bundled coefficient tables they are evaluated against.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::functional::CoefficientFunctional;
use super::setup::{build_cm_setup, CMSetup};
use crate::arith::rational::{int, rat, Rational};
use crate::arith::surd::Surd;
use crate::error::{Error, Result};
use crate::maassfield::{parse_table, CoefficientTable};

/// Bundled table for `d₂ = −23`, `Δ = 1` (`N_Δ'/N_Δ ≅ ℤ/23`).
pub const TABLE_23: &str = include_str!("../../../../data/table-23.json");
/// Bundled table for `d₂ = −7`, `Δ = −3` (`N_Δ'/N_Δ ≅ ℤ/21 × ℤ/3`).
pub const TABLE_63: &str = include_str!("../../../../data/table-63.json");

/// Parses a bundled table by name (`"table-23"` or `"table-63"`).
pub fn bundled_table(name: &str) -> Result<CoefficientTable> {
    match name.trim_end_matches(".json") {
        "table-23" => parse_table(TABLE_23),
        "table-63" => parse_table(TABLE_63),
        other => Err(Error::InvalidInput(format!("no bundled table named {other:?}"))),
    }
}

/// One displayed entry: index `m`, class label (empty when `m` alone determines the
/// class up to sign), and the displayed coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceTerm {
    pub m: Rational,
    pub coords: Vec<u64>,
    pub coeff: Rational,
}

/// A worked example: the CM setup, the display conventions and the reference data.
#[derive(Clone, Debug)]
pub struct WorkedExample {
    /// Short identifier (`"1"`, `"2-j4"`, `"2-j6"`, `"3"`).
    pub id: &'static str,
    pub d2: i64,
    pub delta: i64,
    pub d1: i64,
    pub j: u32,
    /// Bundled table the value is read from.
    pub table: &'static str,
    /// Explicit generators of `N_Δ'/N_Δ` matching the displayed labels, if any.
    pub generators: Option<(Vec<Vec<Rational>>, Vec<u64>)>,
    /// The display shows `scale ·` (the computed quantity).
    pub display_scale: Rational,
    /// Displayed prefactor in front of the vector.
    pub prefactor: Surd,
    /// Displayed entries.
    pub terms: Vec<ReferenceTerm>,
    /// Displayed value of the unscaled quantity.
    pub value: f64,
    /// Absolute tolerance for the value computed from the bundled table (limited by the
    /// table's precision, which is coarsest for the highest weight).
    pub value_tol: f64,
}

impl WorkedExample {
    /// The CM setup, with the labelling generators attached.
    pub fn setup(&self) -> Result<CMSetup> {
        let s = build_cm_setup(self.d2, self.delta, self.d1, self.j)?;
        match &self.generators {
            Some((g, o)) => s.with_n_generators(g.clone(), o.clone()),
            None => Ok(s),
        }
    }

    /// The bundled coefficient table of the example.
    pub fn coefficient_table(&self) -> Result<CoefficientTable> {
        bundled_table(self.table)
    }
}

fn by_23m(entries: &[(i64, Rational)]) -> Vec<ReferenceTerm> {
    entries.iter().map(|(k, c)| ReferenceTerm { m: rat(*k, 23), coords: Vec::new(), coeff: c.clone() }).collect()
}

/// All worked examples.
pub fn worked_examples() -> Vec<WorkedExample> {
    let one = Surd::rational(int(1));
    vec![
        WorkedExample {
            id: "1",
            d2: -23,
            delta: 1,
            d1: -4,
            j: 2,
            table: "table-23",
            generators: None,
            display_scale: int(1),
            prefactor: one.clone(),
            terms: by_23m(&[
                (7, rat(-25, 23)),
                (14, rat(-4, 23)),
                (19, rat(11, 23)),
                (22, rat(20, 23)),
                (23, rat(1, 2)),
                (-1, rat(378, 23)),
            ]),
            value: -1.000394556341,
            value_tol: 1e-10,
        },
        WorkedExample {
            id: "2-j4",
            d2: -23,
            delta: 1,
            d1: -4,
            j: 4,
            table: "table-23",
            generators: None,
            display_scale: rat(1, 2),
            prefactor: one.clone(),
            terms: by_23m(&[
                (7, rat(493, 4232)),
                (14, rat(447, 1058)),
                (19, rat(613, 4232)),
                (22, rat(-233, 1058)),
                (23, rat(-3, 16)),
                (-1, rat(-5775, 2116)),
            ]),
            value: -0.0869366459199,
            value_tol: 1e-10,
        },
        WorkedExample {
            id: "2-j6",
            d2: -23,
            delta: 1,
            d1: -4,
            j: 6,
            table: "table-23",
            generators: None,
            display_scale: rat(1, 2),
            prefactor: one,
            terms: by_23m(&[
                (7, rat(-80659, 194672)),
                (14, rat(2578, 24334)),
                (19, rat(60209, 194672)),
                (22, rat(-1538, 24334)),
                (23, rat(-5, 32)),
                (-1, rat(-42273, 97336)),
            ]),
            value: -0.0101643901834,
            value_tol: 2.1e-7,
        },
        WorkedExample {
            id: "3",
            d2: -7,
            delta: -3,
            d1: 1,
            j: 1,
            table: "table-63",
            generators: Some((vec![vec![rat(1, 21), rat(2, 21)], vec![int(0), rat(1, 3)]], vec![21, 3])),
            display_scale: int(1),
            prefactor: Surd::new(rat(1, 7), &int(21)).expect("positive radicand"),
            terms: [
                (-1, [1, 0], -25),
                (-1, [1, 1], 25),
                (-1, [8, 0], -25),
                (-1, [8, 2], 5),
                (5, [4, 0], 1),
                (5, [4, 1], -1),
                (5, [10, 0], 1),
                (5, [10, 1], -1),
            ]
            .iter()
            .map(|(k, c, v)| ReferenceTerm { m: rat(*k, 21), coords: c.to_vec(), coeff: int(*v) })
            .collect(),
            value: -8.786454145857,
            value_tol: 1e-9,
        },
    ]
}

/// Outcome of comparing a computed functional with a displayed one.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceComparison {
    /// `+1` if the computed functional agrees with the display on most entries, `−1` if
    /// its negative does, `0` if no entry agrees either way.
    pub sign: i32,
    /// Entries that differ after applying `sign`, rendered
    /// as `"m, label: computed vs displayed"` (in units of the displayed prefactor).
    pub mismatches: Vec<String>,
    /// Number of displayed entries.
    pub displayed: usize,
    /// Number of nonzero computed entries.
    pub computed: usize,
}

/// Compares `functional` (unscaled) with the display of `ex`.  The comparison is in units
/// of the displayed prefactor, so `(3/√21)·(…)` compares the vector in parentheses.
pub fn compare_with_display(ex: &WorkedExample, functional: &CoefficientFunctional) -> Result<ReferenceComparison> {
    let ratio = functional.prefactor.mul(&ex.prefactor_inverse()?);
    if !ratio.radicand.is_one() {
        return Err(Error::Incompatible(format!("prefactor {} is not a rational multiple of {}", functional.prefactor, ex.prefactor)));
    }
    let unit = &ratio.coeff * &ex.display_scale;
    let mut computed: BTreeMap<(Rational, Vec<u64>), Rational> = BTreeMap::new();
    for t in &functional.terms {
        let key_coords = if ex.terms.iter().all(|r| r.coords.is_empty()) { Vec::new() } else { t.coords.clone() };
        *computed.entry((t.m.clone(), key_coords)).or_insert_with(Rational::zero) += &t.coeff * &unit;
    }
    computed.retain(|_, c| !c.is_zero());
    let displayed: BTreeMap<(Rational, Vec<u64>), Rational> =
        ex.terms.iter().map(|r| ((r.m.clone(), r.coords.clone()), r.coeff.clone())).collect();
    let agree = |s: i32| computed.iter().filter(|(k, c)| displayed.get(k) == Some(&((*c).clone() * int(s as i64)))).count();
    let (plus, minus) = (agree(1), agree(-1));
    let (sign, best): (i32, usize) = if plus >= minus { (1, plus) } else { (-1, minus) };
    let mut mismatches = Vec::new();
    let keys: std::collections::BTreeSet<_> = computed.keys().chain(displayed.keys()).cloned().collect();
    for k in keys {
        let c = computed.get(&k).cloned().unwrap_or_else(Rational::zero) * int(sign as i64);
        let d = displayed.get(&k).cloned().unwrap_or_else(Rational::zero);
        if c != d {
            mismatches.push(format!("m = {}, label {:?}: computed {} vs displayed {}", k.0, k.1, c, d));
        }
    }
    Ok(ReferenceComparison { sign: if best > 0 { sign } else { 0 }, mismatches, displayed: displayed.len(), computed: computed.len() })
}

impl WorkedExample {
    fn prefactor_inverse(&self) -> Result<Surd> {
        // (c√r)⁻¹ = (1/(c r))·√r
        let r = Rational::from_integer(self.prefactor.radicand.clone());
        if self.prefactor.coeff.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Surd { coeff: Rational::one() / (&self.prefactor.coeff * &r), radicand: self.prefactor.radicand.clone() })
    }
}
