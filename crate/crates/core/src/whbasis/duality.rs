//! Paired bases `{f_{m,μ}}` of `M^!_{2−k, ρ̄}` and `{g_{n,ν}}` of `M^!_{k, ρ}` for the
//! level-one discriminant group, normalized by vanishing conditions at fixed pivot
//! indices, together with their coefficient access `a_{m,μ}(n,ν)` and `b_{n,ν}(m,μ)`.
//!
//! Indices are scalar-model exponents: the vector-valued index `(m, μ)` corresponds
//! to the scalar exponent `4m`, with `μ` read off from its residue mod 4.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::plus::{PlusSpace, Rep};
use crate::arith::qseries::QSeries;
use crate::arith::rational::{int, Rational};
use crate::error::{Error, Result};

/// The two paired bases of the Bruinier–Funke duality.
#[derive(Clone, Debug)]
pub struct DualityBases {
    /// Weight `k` of the `g`-side.
    pub k: Rational,
    /// Pivot indices of the holomorphic space on the `g`-side (scalar exponents ≥ 0).
    pub g_pivots: Vec<i64>,
    /// Pivot indices of the holomorphic space on the `f`-side.
    pub f_pivots: Vec<i64>,
    /// `f_m` for positive principal indices `m` (principal part `q^{−m}`).
    pub f: BTreeMap<i64, QSeries>,
    /// `g_n` for positive principal indices `n`.
    pub g: BTreeMap<i64, QSeries>,
    /// The dual-basis elements `G_i` (holomorphic, `g`-side) keyed by pivot.
    pub g_holomorphic: BTreeMap<i64, QSeries>,
    /// The dual-basis elements `F_i` (holomorphic, `f`-side) keyed by pivot.
    pub f_holomorphic: BTreeMap<i64, QSeries>,
}

impl DualityBases {
    /// `a_m(n)`: coefficient of `q^n` in `f_m`.
    pub fn a(&self, m: i64, n: i64) -> Option<Rational> {
        self.f.get(&m).and_then(|s| s.coeff(&int(n)))
    }

    /// `b_n(m)`: coefficient of `q^m` in `g_n`.
    pub fn b(&self, n: i64, m: i64) -> Option<Rational> {
        self.g.get(&n).and_then(|s| s.coeff(&int(m)))
    }
}

/// Combination of the rows of `space` with coefficient `values[p]` at every pivot `p`
/// mentioned (others zero), checked against all prescriptions in `values`.
fn realize(space: &PlusSpace, values: &BTreeMap<i64, Rational>) -> Result<QSeries> {
    let mut acc = QSeries::zero(&int(space.order));
    for (p, row) in &space.rows {
        if let Some(v) = values.get(p) {
            if !v.is_zero() {
                acc = acc.add(&row.scale(v));
            }
        }
    }
    for (e, v) in values {
        let got = acc.coeff(&int(*e)).unwrap_or_default();
        if &got != v {
            return Err(Error::Singular(format!("prescription at q^{e} not realizable ({got} ≠ {v})")));
        }
    }
    Ok(acc)
}

/// Builds `f_m` for the `count` smallest admissible positive `m` and `g_n` for the `count`
/// smallest admissible positive `n`, with coefficients known below scalar exponent `order`.
///
/// `k` must be `≡ 1/2 (mod 2)` so that the `g`-side is of theta type.
pub fn duality_bases(k: &Rational, count: usize, order: i64) -> Result<DualityBases> {
    let wg = k.clone();
    let wf = int(2) - k;
    let rg = Rep::for_weight(&wg)?;
    if rg != Rep::Theta {
        return Err(Error::InvalidInput(format!("k = {k} must be ≡ 1/2 mod 2")));
    }
    let rf = rg.dual();
    let hol_g = PlusSpace::new(&wg, 0, order)?;
    let hol_f = PlusSpace::new(&wf, 0, order)?;
    let g_hol: BTreeMap<i64, QSeries> = hol_g.holomorphic_rows().cloned().collect();
    let f_hol: BTreeMap<i64, QSeries> = hol_f.holomorphic_rows().cloned().collect();
    let g_pivots: Vec<i64> = g_hol.keys().copied().collect();
    let f_pivots: Vec<i64> = f_hol.keys().copied().collect();

    let f_idx: Vec<i64> = (1..).filter(|&m| rf.admits(-m) && !g_pivots.contains(&m)).take(count).collect();
    let g_idx: Vec<i64> = (1..).filter(|&n| rg.admits(-n) && !f_pivots.contains(&n)).take(count).collect();
    let mpole = *f_idx.last().unwrap_or(&0);
    let npole = *g_idx.last().unwrap_or(&0);
    let space_f = PlusSpace::new(&wf, mpole.max(g_pivots.iter().copied().max().unwrap_or(0)), order)?;
    let space_g = PlusSpace::new(&wg, npole.max(f_pivots.iter().copied().max().unwrap_or(0)), order)?;

    let build = |space: &PlusSpace, idx: i64, rep: Rep, other_hol: &BTreeMap<i64, QSeries>, own_pivots: &[i64]| -> Result<QSeries> {
        let mut values = BTreeMap::new();
        for e in -space.pole..0 {
            if rep.admits(e) {
                values.insert(e, Rational::zero());
            }
        }
        values.insert(-idx, int(1));
        for (p, h) in other_hol {
            let c = h.coeff(&int(idx)).ok_or_else(|| Error::InsufficientOrder("dual-basis coefficient".into()))?;
            *values.entry(-p).or_insert_with(Rational::zero) -= c;
        }
        for p in own_pivots {
            values.insert(*p, Rational::zero());
        }
        realize(space, &values)
    };
    let mut f = BTreeMap::new();
    for &m in &f_idx {
        f.insert(m, build(&space_f, m, rf, &g_hol, &f_pivots)?);
    }
    let mut g = BTreeMap::new();
    for &n in &g_idx {
        g.insert(n, build(&space_g, n, rg, &f_hol, &g_pivots)?);
    }
    Ok(DualityBases { k: k.clone(), g_pivots, f_pivots, f, g, g_holomorphic: g_hol, f_holomorphic: f_hol })
}
