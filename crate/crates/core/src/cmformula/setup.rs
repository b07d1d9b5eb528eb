//! The evaluation context: the CM vector `x₂`, the splitting `P ⊕ N` of the level-one
//! lattice, the twist `Δ` and the rescaled lattices `P_Δ`, `N_Δ`.

use num_traits::{Signed, Zero};

use crate::arith::rational::{int, is_fundamental_discriminant, rat, to_f64, Rational};
use crate::discforms::{level_one_embedded, EmbeddedLattice};
use crate::error::{Error, Result};
use crate::qforms::{twisted_divisor, HeegnerDivisor};

/// Everything the closed formula needs for one choice of `(d₂, Δ, d₁, j)`.
#[derive(Clone, Debug)]
pub struct CMSetup {
    /// Discriminant of the CM point `z₂`.
    pub d2: i64,
    /// `r₂ ∈ {0, 1}` with `d₂ ≡ r₂² (mod 4)`.
    pub r2: i64,
    /// `x₂ = (−1, r₂, (d₂ − r₂²)/4)`, the vector whose orthogonal complement is the CM point.
    pub x2: Vec<Rational>,
    /// Twisting discriminant, `(−1)ʲΔ > 0`.
    pub delta: i64,
    /// `r ∈ {0, 1}` with `Δ ≡ r² (mod 4)`.
    pub r: i64,
    /// Discriminant of the divisor, `(−1)ʲd₁ < 0`.
    pub d1: i64,
    /// Green function index: the spectral parameter is `s = 1 + j`.
    pub j: u32,
    /// `m₁ = |d₁|/4`.
    pub m1: Rational,
    /// The level-one lattice `L`.
    pub l: EmbeddedLattice,
    /// `P = ℤ·(2/(2 − r₂))x₂`, positive definite of rank one.
    pub p: EmbeddedLattice,
    /// `N = P^⊥ ∩ L`, negative definite of rank two and discriminant `d₂`.
    pub n: EmbeddedLattice,
    /// `ΔL` with form `Q/|Δ|`.
    pub ld: EmbeddedLattice,
    /// `ΔP` with form `Q/|Δ|`.
    pub pd: EmbeddedLattice,
    /// `ΔN` with form `Q/|Δ|`; the index set of the Maass-form coefficients.
    pub nd: EmbeddedLattice,
    /// Coefficients `c(m, ν)` with `m < m_min` vanish: `m_min = −1/|d₂Δ|`.
    pub m_min: Rational,
    /// The twisted Heegner divisor `Z_Δ(m₁)` the Green function is summed over.
    pub divisor: HeegnerDivisor,
}

fn residue(d: i64) -> i64 {
    d.rem_euclid(4).min(1)
}

/// Builds the setup; `d₂ < 0`, `d₁` and `Δ` fundamental with `(−1)ʲd₁ < 0 < (−1)ʲΔ`.
pub fn build_cm_setup(d2: i64, delta: i64, d1: i64, j: u32) -> Result<CMSetup> {
    if j == 0 {
        return Err(Error::InvalidInput("j must be positive".into()));
    }
    if d2 >= 0 || !matches!(d2.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidInput(format!("d₂ = {d2} is not a negative discriminant")));
    }
    if !is_fundamental_discriminant(d1) || !is_fundamental_discriminant(delta) {
        return Err(Error::InvalidInput(format!("d₁ = {d1} and Δ = {delta} must be fundamental discriminants")));
    }
    let even = j % 2 == 0;
    if (even && (d1 >= 0 || delta <= 0)) || (!even && (d1 <= 0 || delta >= 0)) {
        return Err(Error::InvalidInput(format!("parity: need (−1)^j d₁ < 0 and (−1)^j Δ > 0, got j = {j}, d₁ = {d1}, Δ = {delta}")));
    }
    let r2 = residue(d2);
    let r = residue(delta);
    let x2 = vec![int(-1), int(r2), rat(d2 - r2 * r2, 4)];
    let l = level_one_embedded();
    let space = l.space_gram().clone();
    let pscale = rat(2, 2 - r2);
    let p = EmbeddedLattice::new(space.clone(), vec![x2.iter().map(|x| x * &pscale).collect()])?;
    let n = EmbeddedLattice::new(space, vec![vec![int(0), int(2), int(-r2)], vec![int(-1), int(0), rat(r2 * r2 - d2, 4)]])?;
    for b in n.basis() {
        debug_assert!(l.ambient_bilinear(b, &x2).is_zero());
    }
    let ld = l.rescaled(delta)?;
    let pd = p.rescaled(delta)?;
    let nd = n.rescaled(delta)?;
    let m1 = rat(d1.abs(), 4);
    let divisor = twisted_divisor(delta, r, &m1)?;
    Ok(CMSetup { d2, r2, x2, delta, r, d1, j, m1, l, p, n, ld, pd, nd, m_min: rat(-1, (d2 * delta).abs()), divisor })
}

impl CMSetup {
    /// Attaches explicit generators of `N_Δ'/N_Δ` (basis coordinates), fixing the labels
    /// `(a₁, a₂, …)` used by coefficient tables.
    pub fn with_n_generators(mut self, gens: Vec<Vec<Rational>>, orders: Vec<u64>) -> Result<Self> {
        self.nd = self.nd.with_generators(gens, orders)?;
        Ok(self)
    }

    /// Weight of the single CM point of `Z_Δ(m₁)`, or `None` if the divisor has several
    /// points (the formula then computes the divisor-level value).
    pub fn point_weight(&self) -> Option<Rational> {
        match self.divisor.points.as_slice() {
            [(w, _)] if !w.is_zero() => Some(w.clone()),
            _ => None,
        }
    }

    /// `true` if the twisted divisor is empty, so every value vanishes.
    pub fn divisor_is_empty(&self) -> bool {
        self.divisor.points.iter().all(|(w, _)| w.is_zero())
    }

    /// The CM point `z₂ = (x, y)`: the root in the upper half-plane of `c z² − b z + a`
    /// for `x₂ = (a, b, c)`.
    pub fn z2(&self) -> (f64, f64) {
        let (b, c) = (to_f64(&self.x2[1]), to_f64(&self.x2[2]));
        debug_assert!(c.is_negative());
        // c < 0, so the upper root is (b − i√|d₂|)/(2c).
        ((b / (2.0 * c)), (self.d2.abs() as f64).sqrt() / (2.0 * c.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_quotients() {
        let s = build_cm_setup(-23, 1, -4, 2).unwrap();
        assert_eq!(s.r2, 1);
        assert_eq!(s.p.group().order(), 46);
        assert_eq!(s.n.lattice().gram(), &[vec![-2, 1], vec![1, -12]]);
        assert_eq!(s.n.lattice().det(), 23.into());
        let s = build_cm_setup(-4, 1, -4, 2).unwrap();
        assert_eq!(s.r2, 0);
        assert_eq!(s.p.group().order(), 2);
    }

    #[test]
    fn twisted_example() {
        let s = build_cm_setup(-7, -3, 1, 1).unwrap();
        assert_eq!(s.nd.lattice().gram(), &[vec![-6, 3], vec![3, -12]]);
        assert_eq!(s.nd.group().order(), 63);
        assert_eq!(s.m_min, rat(-1, 21));
    }

    #[test]
    fn parity_is_enforced() {
        assert!(build_cm_setup(-23, 1, 5, 2).is_err());
        assert!(build_cm_setup(-23, -3, 1, 2).is_err());
        assert!(build_cm_setup(-7, 1, 1, 1).is_err());
        assert!(build_cm_setup(-7, -3, 9, 1).is_err());
    }
}
