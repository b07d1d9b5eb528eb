//! Half-integral weight forms in the Kohnen plus space and their vector-valued
//! avatars for the level-one discriminant group `ℤ/2`.
//!
//! Everything is computed in the scalar model `F(τ) = f₀(4τ) + f₁(4τ)`, which
//! has integer exponents.  Forms of the theta type (exponents `n ≡ 0, 1 mod 4`,
//! weights `≡ 1/2 mod 2`) form a free module over the level-one ring `M_*` on
//! `θ = Σ q^{n²}` and its Serre derivative; forms of the dual type (`n ≡ 0, 3
//! mod 4`, weights `≡ 3/2 mod 2`) arise from theta-type forms `g` of weight
//! `w + 3` as `η(4τ)⁻⁶ (g₁ − g₀)`, where `g₀`, `g₁` are the parts of `g` with
//! `n ≡ 0` and `n ≡ 1 mod 4`.  Weakly holomorphic forms with a pole of order at
//! most `N` (in `q` at `4τ`) are `Δ(4τ)^{−N}` times holomorphic ones.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{delta_inverse, e2_series, eisenstein_series, euler_product};
use crate::arith::linalg::rref;
use crate::arith::qseries::QSeries;
use crate::arith::rational::{int, rat, Rational};
use crate::discforms::EvenLattice;
use crate::error::{Error, Result};

/// Exponent congruence class of a plus-space form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Rep {
    /// Scalar exponents `n ≡ 0, 1 (mod 4)`: component exponents `≡ +μ²/4`, the type of `θ`.
    /// For the level-one lattice `L` (where `Q(μ₁) = −1/4`) these are the forms for `ρ̄_L`.
    Theta,
    /// Scalar exponents `n ≡ 0, 3 (mod 4)`: the forms for `ρ_L`.
    Dual,
}

impl Rep {
    /// `true` if the scalar exponent `n` is allowed.
    pub fn admits(self, n: i64) -> bool {
        match self {
            Rep::Theta => matches!(n.rem_euclid(4), 0 | 1),
            Rep::Dual => matches!(n.rem_euclid(4), 0 | 3),
        }
    }

    /// The other class.
    pub fn dual(self) -> Rep {
        match self {
            Rep::Theta => Rep::Dual,
            Rep::Dual => Rep::Theta,
        }
    }

    /// The class carrying weight `w` (`1/2 mod 2` → theta type, `3/2 mod 2` → dual type).
    pub fn for_weight(w: &Rational) -> Result<Rep> {
        let t = (w - rat(1, 2)) / int(2);
        if t.is_integer() {
            return Ok(Rep::Theta);
        }
        let t = (w - rat(3, 2)) / int(2);
        if t.is_integer() {
            return Ok(Rep::Dual);
        }
        Err(Error::InvalidInput(format!("weight {w} is not half-integral")))
    }
}

/// Plus-space form in the scalar model.
#[derive(Clone, Debug, PartialEq)]
pub struct PlusForm {
    /// Weight `k ∈ ½ + ℤ`.
    pub weight: Rational,
    /// Exponent class.
    pub rep: Rep,
    /// Scalar-model q-expansion (integer exponents).
    pub q: QSeries,
}

impl PlusForm {
    /// Vector-valued components `[f₀, f₁]` indexed by `ℤ/2` (exponents divided by 4).
    pub fn components(&self) -> [QSeries; 2] {
        let quarter = rat(1, 4);
        let f0 = self.q.filter(|e| e.to_integer().to_i64().unwrap_or(1).rem_euclid(4) == 0);
        let f1 = self.q.filter(|e| e.to_integer().to_i64().unwrap_or(0).rem_euclid(4) != 0);
        [f0.rescale_exponents(&quarter), f1.rescale_exponents(&quarter)]
    }

    /// Inverse of [`PlusForm::components`].
    pub fn from_components(weight: Rational, rep: Rep, comps: &[QSeries; 2]) -> Result<Self> {
        let four = int(4);
        let q = comps[0].rescale_exponents(&four).add(&comps[1].rescale_exponents(&four));
        if q.den() != 1 || q.terms().any(|(e, _)| !rep.admits(e.to_integer().to_i64().unwrap_or(2))) {
            return Err(Error::InvalidInput("components violate the plus-space congruences".into()));
        }
        Ok(PlusForm { weight, rep, q })
    }

    /// Coefficient at scalar exponent `n`.
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        self.q.coeff(&int(n))
    }

    /// Vector-valued avatar over the level-one lattice.
    pub fn to_vv(&self, lattice: &EvenLattice) -> VVForm {
        VVForm { lattice: lattice.clone(), weight: self.weight.clone(), rep: self.rep, comps: self.components().to_vec() }
    }
}

/// Vector-valued form: one q-series per discriminant-group element.
#[derive(Clone, Debug, PartialEq)]
pub struct VVForm {
    /// Lattice whose discriminant group indexes the components.
    pub lattice: EvenLattice,
    /// Weight.
    pub weight: Rational,
    /// Exponent class (for the level-one lattice).
    pub rep: Rep,
    /// Components in discriminant-group index order.
    pub comps: Vec<QSeries>,
}

impl VVForm {
    /// Scalar avatar (level-one lattice only).
    pub fn to_plus(&self) -> Result<PlusForm> {
        if self.comps.len() != 2 {
            return Err(Error::Incompatible("scalar model exists for the level-one group only".into()));
        }
        PlusForm::from_components(self.weight.clone(), self.rep, &[self.comps[0].clone(), self.comps[1].clone()])
    }
}

/// The level-one lattice `L` in coordinates `(a, b, c)` with `Q = ac − b²/4`
/// (basis `(1,0,0), (0,2,0), (0,0,1)`).
pub fn level_one_lattice() -> EvenLattice {
    EvenLattice::new(vec![vec![0, 0, 1], vec![0, -2, 0], vec![1, 0, 0]]).expect("valid Gram matrix")
}

/// `θ(τ) = Σ_{n∈ℤ} q^{n²}` below `order`.
pub fn theta(order: i64) -> QSeries {
    let mut coeffs = vec![Rational::zero(); order.max(0) as usize];
    let mut n = 0i64;
    while n * n < order {
        coeffs[(n * n) as usize] += int(if n == 0 { 1 } else { 2 });
        n += 1;
    }
    QSeries::from_parts(1, 0, coeffs, Some(order.max(0)))
}

fn at4(s: &QSeries) -> QSeries {
    s.rescale_exponents(&int(4))
}

/// Ingredient series in the scalar model, all known below a common order.
struct Ingredients {
    order: i64,
    theta: QSeries,
    serre_theta: QSeries,
    e4: QSeries,
    e6: QSeries,
    delta_inv: QSeries,
    eta_m6: QSeries,
}

impl Ingredients {
    fn new(order: i64) -> Result<Self> {
        let lvl = order / 4 + 2;
        let th = theta(order);
        let e2 = at4(&e2_series(lvl));
        // Serre derivative in the vector-valued variable: (1/4)·q d/dq on the scalar model.
        let serre_theta = th.theta_derivative(1).scale(&rat(1, 4)).sub(&e2.mul(&th).scale(&rat(1, 24)));
        let e4 = at4(&eisenstein_series(4, lvl)?.q);
        let e6 = at4(&eisenstein_series(6, lvl)?.q);
        let delta_inv = at4(&delta_inverse(lvl).q);
        let p = euler_product(lvl + 1);
        let eta_m6 = at4(&p.pow(-6, Some(&int(lvl + 1)))?).shift(&int(-1));
        Ok(Ingredients { order, theta: th, serre_theta, e4, e6, delta_inv, eta_m6 })
    }

    fn power(&self, s: &QSeries, e: i64) -> QSeries {
        let mut acc = QSeries::monomial(&Rational::zero(), Rational::one());
        for _ in 0..e {
            acc = acc.mul(s).truncate(&int(self.order + 64));
        }
        acc
    }

    /// Holomorphic theta-type forms of weight `w` (a basis).
    fn holomorphic_theta(&self, w: &Rational) -> Vec<QSeries> {
        let mut out = Vec::new();
        for (gen, shift) in [(&self.theta, rat(1, 2)), (&self.serre_theta, rat(5, 2))] {
            let k = w - shift;
            if !k.is_integer() || k.is_negative() {
                continue;
            }
            let k = k.to_integer().to_i64().unwrap();
            let mut b = 0;
            while 6 * b <= k {
                if (k - 6 * b) % 4 == 0 {
                    let a = (k - 6 * b) / 4;
                    out.push(self.power(&self.e4, a).mul(&self.power(&self.e6, b)).mul(gen));
                }
                b += 1;
            }
        }
        out
    }

    /// Spanning set of weakly holomorphic theta-type forms of weight `w` with pole order ≤ `4n` (scalar units).
    fn weakly_theta(&self, w: &Rational, n: i64) -> Vec<QSeries> {
        let dn = self.power(&self.delta_inv, n);
        self.holomorphic_theta(&(w + int(12 * n))).iter().map(|g| g.mul(&dn)).collect()
    }

    /// Dual-type forms `η(4τ)⁻⁶ (g₁ − g₀)` from theta-type `g` of weight `w + 3`.
    fn weakly_dual(&self, w: &Rational, n: i64) -> Vec<QSeries> {
        self.weakly_theta(&(w + int(3)), n)
            .iter()
            .map(|g| {
                let g1 = g.filter(|e| e.to_integer().to_i64().unwrap_or(0).rem_euclid(4) == 1);
                let g0 = g.filter(|e| e.to_integer().to_i64().unwrap_or(1).rem_euclid(4) == 0);
                g1.sub(&g0).mul(&self.eta_m6)
            })
            .collect()
    }
}

/// Echelon basis of the weakly holomorphic plus-space forms of one weight with a bounded pole.
///
/// Row `i` is the unique form `q^{pivot_i} + (terms at non-pivot exponents)`;
/// pivots increase strictly.
#[derive(Clone, Debug, PartialEq)]
pub struct PlusSpace {
    /// Weight.
    pub weight: Rational,
    /// Exponent class.
    pub rep: Rep,
    /// Largest pole order admitted (scalar units).
    pub pole: i64,
    /// Truncation order (scalar units, exclusive).
    pub order: i64,
    /// `(pivot exponent, form)` pairs.
    pub rows: Vec<(i64, QSeries)>,
}

impl PlusSpace {
    /// Builds the echelon basis of forms of weight `weight` with all scalar exponents
    /// `≥ −pole`, known below `order`.
    pub fn new(weight: &Rational, pole: i64, order: i64) -> Result<Self> {
        let rep = Rep::for_weight(weight)?;
        if order <= 0 || pole < 0 {
            return Err(Error::InvalidInput("order must be positive and pole non-negative".into()));
        }
        // Spanning set with a pole at least as large as requested.
        let (n, lo) = match rep {
            Rep::Theta => ((pole + 3) / 4, 4 * ((pole + 3) / 4)),
            Rep::Dual => ((pole + 2) / 4, 4 * ((pole + 2) / 4) + 1),
        };
        let ing = Ingredients::new(order + 4 * n + 16)?;
        let gens = match rep {
            Rep::Theta => ing.weakly_theta(weight, n),
            Rep::Dual => ing.weakly_dual(weight, n),
        };
        let cols: Vec<i64> = (-lo..order).filter(|&e| rep.admits(e)).collect();
        let mut m: Vec<Vec<Rational>> = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.order().is_some_and(|o| o < int(order)) {
                return Err(Error::InsufficientOrder(format!("generator known only below {:?}", g.order())));
            }
            m.push(cols.iter().map(|&e| g.coeff(&int(e)).unwrap_or_default()).collect());
        }
        let pivots = rref(&mut m);
        if pivots.len() != gens.len() {
            return Err(Error::InsufficientOrder(format!(
                "only {} of {} generators independent below q^{order}; increase the order",
                pivots.len(),
                gens.len()
            )));
        }
        let rows = pivots
            .iter()
            .zip(m)
            .filter(|(&p, _)| cols[p] >= -pole)
            .map(|(&p, row)| {
                let coeffs: Vec<(Rational, Rational)> =
                    cols.iter().zip(row).filter(|(_, c)| !c.is_zero()).map(|(&e, c)| (int(e), c)).collect();
                (cols[p], QSeries::from_terms(&coeffs, Some(&int(order))))
            })
            .collect();
        Ok(PlusSpace { weight: weight.clone(), rep, pole, order, rows })
    }

    /// Pivot exponents.
    pub fn pivots(&self) -> Vec<i64> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Row with the given pivot.
    pub fn row(&self, pivot: i64) -> Option<&QSeries> {
        self.rows.iter().find(|(p, _)| *p == pivot).map(|(_, r)| r)
    }

    /// The holomorphic subspace (rows with non-negative pivot).
    pub fn holomorphic_rows(&self) -> impl Iterator<Item = &(i64, QSeries)> {
        self.rows.iter().filter(|(p, _)| *p >= 0)
    }

    /// The unique form in the space with the prescribed principal part (scalar exponents `< 0`),
    /// whose coefficients at non-negative pivots are zero.  Fails if the principal part
    /// is not realizable.
    pub fn with_principal_part(&self, pp: &[(i64, Rational)]) -> Result<QSeries> {
        let mut acc = QSeries::zero(&int(self.order));
        for (e, c) in pp {
            if *e >= 0 {
                return Err(Error::InvalidInput("principal part exponents must be negative".into()));
            }
            if c.is_zero() {
                continue;
            }
            if !self.rep.admits(*e) {
                return Err(Error::Unrealisable(format!("q^{e} violates the plus-space congruence")));
            }
            if *e < -self.pole {
                return Err(Error::InvalidInput(format!("pole q^{e} exceeds the space bound {}", self.pole)));
            }
            if let Some(r) = self.row(*e) {
                acc = acc.add(&r.scale(c));
            }
        }
        // Non-pivot negative columns are forced by the pivot ones; verify.
        let want =
            QSeries::from_terms(&pp.iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (int(*e), c.clone())).collect::<Vec<_>>(), None);
        let got = QSeries::from_terms(&acc.principal_part(), None);
        if got != want {
            return Err(Error::Unrealisable(format!("principal part {want} is not realizable (closest: {got})")));
        }
        Ok(acc)
    }
}

/// Duke–Jenkins type basis of the plus space of weight `1/2 − j`: forms `q^{−m} + O(q^{A+1})`
/// for every pivot `−m ≥ −depth`, known below `order` (scalar units).
pub fn plus_space_basis(j: i64, depth: i64, order: i64) -> Result<Vec<PlusForm>> {
    let w = rat(1, 2) - int(j);
    let sp = PlusSpace::new(&w, depth, order)?;
    Ok(sp.rows.into_iter().map(|(_, q)| PlusForm { weight: w.clone(), rep: sp.rep, q }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_half_starts_with_theta() {
        let b = plus_space_basis(0, 0, 30).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].q, theta(30));
    }

    #[test]
    fn zagier_weight_three_halves() {
        // Zagier's g₁ = q⁻¹ − 2 + 248q³ − 492q⁴ + 4119q⁷ − 7256q⁸ + …  (weight 3/2, dual type)
        let sp = PlusSpace::new(&rat(3, 2), 1, 9).unwrap();
        let f = sp.row(-1).unwrap();
        assert_eq!(f, &QSeries::from_int_coeffs(-1, &[1, -2, 0, 0, 248, -492, 0, 0, 4119, -7256], Some(9)));
    }

    #[test]
    fn avatar_round_trip() {
        let b = plus_space_basis(2, 4, 24).unwrap();
        for f in &b {
            let c = f.components();
            assert_eq!(&PlusForm::from_components(f.weight.clone(), f.rep, &c).unwrap(), f);
        }
    }
}
