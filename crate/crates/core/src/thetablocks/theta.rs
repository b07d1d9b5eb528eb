//! Theta series of positive definite lattices of rank ≤ 2 and the weight-3/2
//! theta series of a unary lattice weighted by the linear form `p_z`.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::qseries::QSeries;
use crate::arith::rational::{int, Rational};
use crate::arith::surd::Surd;
use crate::discforms::{DiscGroup, EmbeddedLattice, EvenLattice};
use crate::error::{Error, Result};

/// Vector-valued theta series `prefactor · Σ_μ components[μ] φ_μ`.
///
/// Components are indexed like the discriminant group of `lattice`; the
/// coefficients of the components are rational and the common irrational
/// factor (if any) is kept in `prefactor`.
#[derive(Clone, Debug)]
pub struct ThetaSeries {
    /// The (positive definite) lattice.
    pub lattice: EvenLattice,
    /// Its discriminant group, indexing the components.
    pub group: DiscGroup,
    /// Weight: `rank/2` for plain theta series, `3/2` for the unary weighted one.
    pub weight: Rational,
    /// Common factor of all coefficients.
    pub prefactor: Surd,
    /// Components in group-index order.
    pub components: Vec<QSeries>,
}

fn f64_min_eigenvalue(g: &[Vec<i64>]) -> f64 {
    match g.len() {
        1 => g[0][0] as f64,
        2 => {
            let (a, b, d) = (g[0][0] as f64, g[0][1] as f64, g[1][1] as f64);
            let tr = a + d;
            let disc = ((a - d) * (a - d) + 4.0 * b * b).sqrt();
            (tr - disc) / 2.0
        }
        _ => f64::NAN,
    }
}

/// Positive definite Gram matrix: `g` itself or `−g` for negative definite input.
fn positive_gram(l: &EvenLattice) -> Result<Vec<Vec<i64>>> {
    let r = l.rank();
    match l.signature() {
        (p, 0) if p == r => Ok(l.gram().to_vec()),
        (0, n) if n == r => Ok(l.gram().iter().map(|row| row.iter().map(|x| -x).collect()).collect()),
        s => Err(Error::InvalidInput(format!("theta series needs a definite lattice, signature {s:?}"))),
    }
}

/// Enumerates `x ∈ L'` (basis coordinates) with `Q(x) < order`, calling `visit(μ, x, Q(x))`.
fn enumerate_dual(
    l: &EvenLattice,
    group: &DiscGroup,
    order: &Rational,
    mut visit: impl FnMut(usize, &[Rational], &Rational),
) -> Result<()> {
    let g = positive_gram(l)?;
    let n = g.len();
    if n == 0 || n > 2 {
        return Err(Error::InvalidInput(format!("theta series implemented for rank 1 and 2, got {n}")));
    }
    let pl = EvenLattice::new(g)?;
    let lam = f64_min_eigenvalue(pl.gram());
    // Q(x) = ½xᵀGx ≥ ½λ_min|x|², so each coordinate is bounded by √(2·order/λ_min).
    let radius = (2.0 * crate::arith::rational::to_f64(order) / lam).sqrt().ceil() as i64 + 1;
    for mu in 0..group.order() {
        let rep = group.representative(mu).to_vec();
        let mut visit_vec = |shift: &[i64]| {
            let x: Vec<Rational> = rep.iter().zip(shift).map(|(r, s)| r + int(*s)).collect();
            let q = pl.q(&x);
            if &q < order {
                visit(mu, &x, &q);
            }
        };
        if n == 1 {
            for a in -radius..=radius {
                visit_vec(&[a]);
            }
        } else {
            for a in -radius..=radius {
                for b in -radius..=radius {
                    visit_vec(&[a, b]);
                }
            }
        }
    }
    Ok(())
}

/// `θ_P = Σ_μ Σ_{λ∈μ+P} q^{Q(λ)} φ_μ` below `order`, by direct enumeration.
///
/// A negative definite lattice is accepted and treated with the form `−Q`.
pub fn theta_series(p: &EvenLattice, order: &Rational) -> Result<ThetaSeries> {
    theta_series_in(p, p.discriminant_group()?, order)
}

/// [`theta_series`] of an embedded lattice, indexed by its attached discriminant group
/// (so that components line up with other series over the same lattice).
pub fn theta_series_embedded(p: &EmbeddedLattice, order: &Rational) -> Result<ThetaSeries> {
    theta_series_in(p.lattice(), p.group().clone(), order)
}

fn theta_series_in(p: &EvenLattice, group: DiscGroup, order: &Rational) -> Result<ThetaSeries> {
    let mut terms: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); group.order()];
    enumerate_dual(p, &group, order, |mu, _, q| terms[mu].push((q.clone(), int(1))))?;
    let components = terms.iter().map(|t| QSeries::from_terms(t, Some(order))).collect();
    Ok(ThetaSeries {
        lattice: p.clone(),
        group,
        weight: Rational::new(p.rank().into(), 2.into()),
        prefactor: Surd::rational(int(1)),
        components,
    })
}

/// The weight-3/2 theta series of a rescaled unary lattice `P_Δ`,
/// `(1/√|Δ|) Σ_μ Σ_{λ∈ΔP+μ} p(λ) q^{Q(λ)/|Δ|} φ_μ`, where `p` is the linear form on
/// the positive line equal to `±√Q(λ)` (unscaled form `Q = |Δ|·Q_Δ`).
///
/// The sign of `p(λ)` is `orientation · sgn((λ, direction))`.  Since
/// `p(λ)/√|Δ| = ±√Q_Δ(λ) = ±|t|·√Q_Δ(g)` for `λ = t·g` with `g` generating `P_Δ'`,
/// all coefficients are rational multiples of the prefactor `√Q_Δ(g)`.
pub fn theta_weight32(pd: &EmbeddedLattice, direction: &[Rational], orientation: i32, order: &Rational) -> Result<ThetaSeries> {
    if pd.lattice().rank() != 1 || pd.lattice().signature() != (1, 0) {
        return Err(Error::InvalidInput("the weight-3/2 theta series needs a positive unary lattice".into()));
    }
    if orientation != 1 && orientation != -1 {
        return Err(Error::InvalidInput("orientation must be ±1".into()));
    }
    let l = pd.lattice();
    let group = pd.group().clone();
    let gen_q = Rational::new(1.into(), int(l.gram()[0][0]).numer().clone()) / int(2);
    // P' = ℤ·(e/g₀) where g₀ = (e,e); Q_Δ(e/g₀) = 1/(2g₀).
    let prefactor = Surd::sqrt(&gen_q)?;
    let g0 = l.gram()[0][0];
    let mut terms: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(); group.order()];
    enumerate_dual(l, &group, order, |mu, x, q| {
        // x = t/g₀ in basis coordinates.
        let t = (&x[0] * int(g0)).to_integer().to_i64().expect("small multiple");
        if t == 0 {
            return;
        }
        debug_assert_eq!(q, &(&gen_q * int(t * t)));
        let amb = pd.vector_of(x);
        let s = pd.ambient_bilinear(&amb, direction);
        let sign = if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        };
        terms[mu].push((q.clone(), int(orientation as i64 * sign * t.abs())));
    })?;
    if direction.iter().all(|d| d.is_zero()) {
        return Err(Error::InvalidInput("orientation direction must be nonzero".into()));
    }
    let components = terms.iter().map(|t| QSeries::from_terms(t, Some(order))).collect();
    Ok(ThetaSeries { lattice: l.clone(), group, weight: Rational::new(3.into(), 2.into()), prefactor, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn unary_theta_is_jacobi_theta() {
        // ℤ with Q(n) = n²: Gram [2]; the group is ℤ/2 with components θ₀₀(4τ)-type pieces.
        let p = EvenLattice::new(vec![vec![2]]).unwrap();
        let th = theta_series(&p, &int(10)).unwrap();
        let c0 = &th.components[0];
        for (n, want) in [(0, 1), (1, 2), (2, 0), (4, 2), (9, 2)] {
            assert_eq!(c0.coeff(&int(n)), Some(int(want)));
        }
        // the other coset (n + 1/2) carries q^{(n+1/2)²}
        assert_eq!(th.components[1].coeff(&rat(1, 4)), Some(int(2)));
    }

    #[test]
    fn binary_theta_counts_norms() {
        // Gram [[2,1],[1,2]]: the hexagonal lattice, 6 vectors of norm 1.
        let p = EvenLattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        let th = theta_series(&p, &int(4)).unwrap();
        assert_eq!(th.components[0].coeff(&int(0)), Some(int(1)));
        assert_eq!(th.components[0].coeff(&int(1)), Some(int(6)));
        assert_eq!(th.components[0].coeff(&int(3)), Some(int(6)));
    }
}
