//! Maps between vector-valued q-series attached to related lattices:
//! restriction to a sublattice and the twist map `ψ_Δ` into the rescaled lattice.

use num_traits::Zero;

use super::lattice::EmbeddedLattice;
use crate::arith::qseries::QSeries;
use crate::arith::rational::{frac, int, Rational};
use crate::error::{Error, Result};

/// Smallest truncation order among the components (`None` if all are exact).
pub fn common_order(f: &[QSeries]) -> Option<Rational> {
    f.iter().filter_map(|c| c.order()).min()
}

fn zero_like(f: &[QSeries]) -> QSeries {
    match common_order(f) {
        Some(o) => QSeries::zero(&o),
        None => QSeries::exact_zero(),
    }
}

fn check_sublattice(l: &EmbeddedLattice, m: &EmbeddedLattice) -> Result<()> {
    if m.basis().iter().all(|b| l.contains(b)) {
        Ok(())
    } else {
        Err(Error::Incompatible("M is not a sublattice of L".into()))
    }
}

/// The image of `μ ∈ M'/M` under the partial map `M'/M ⊇ L'/M → L'/L` (`None` if `μ ∉ L'/M`).
pub fn lift_index(l: &EmbeddedLattice, m: &EmbeddedLattice, mu: usize) -> Option<usize> {
    l.disc_index(&m.disc_vector(mu))
}

/// Restriction of `f = Σ f_λ φ_λ` (indexed by `L'/L`) to a finite-index sublattice `M ⊆ L`:
/// `(f_M)_μ = f_{μ̄}` if `μ ∈ L'/M`, and `0` otherwise.
pub fn restrict_to_sublattice(f: &[QSeries], l: &EmbeddedLattice, m: &EmbeddedLattice) -> Result<Vec<QSeries>> {
    if f.len() != l.group().order() {
        return Err(Error::Incompatible("component count differs from |L'/L|".into()));
    }
    if m.lattice().rank() != l.lattice().rank() {
        return Err(Error::Incompatible("sublattice must have finite index".into()));
    }
    check_sublattice(l, m)?;
    let zero = zero_like(f);
    Ok((0..m.group().order())
        .map(|mu| match lift_index(l, m, mu) {
            Some(i) => f[i].clone(),
            None => zero.clone(),
        })
        .collect())
}

/// Restriction of `f` to an orthogonal sum `P ⊕ N ⊆ L` of finite index, indexed by
/// pairs: entry `[p][ν]` is the component at `p + ν ∈ (P ⊕ N)'/(P ⊕ N)`.
pub fn restrict_to_orthogonal_sum(
    f: &[QSeries],
    l: &EmbeddedLattice,
    p: &EmbeddedLattice,
    n: &EmbeddedLattice,
) -> Result<Vec<Vec<QSeries>>> {
    if f.len() != l.group().order() {
        return Err(Error::Incompatible("component count differs from |L'/L|".into()));
    }
    if p.lattice().rank() + n.lattice().rank() != l.lattice().rank() {
        return Err(Error::Incompatible("P ⊕ N must have finite index in L".into()));
    }
    check_sublattice(l, p)?;
    check_sublattice(l, n)?;
    for a in p.basis() {
        for b in n.basis() {
            if !l.ambient_bilinear(a, b).is_zero() {
                return Err(Error::Incompatible("P and N are not orthogonal".into()));
            }
        }
    }
    let zero = zero_like(f);
    let mut out = Vec::with_capacity(p.group().order());
    for pi in 0..p.group().order() {
        let vp = p.disc_vector(pi);
        let row = (0..n.group().order())
            .map(|ni| {
                let v: Vec<Rational> = vp.iter().zip(n.disc_vector(ni)).map(|(a, b)| a + b).collect();
                match l.disc_index(&v) {
                    Some(i) => f[i].clone(),
                    None => zero.clone(),
                }
            })
            .collect();
        out.push(row);
    }
    Ok(out)
}

/// Sparse matrix of `ψ_Δ`: entry `μ` lists the pairs `(δ, χ_Δ(δ))` with `χ_Δ(δ) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    /// Images indexed by `μ ∈ L'/L`; `δ` indexes `L'/ΔL`.
    pub images: Vec<Vec<(usize, i32)>>,
}

impl PsiMap {
    /// Applies the map to a vector-valued q-series indexed by `L'/L`.
    pub fn apply(&self, f: &[QSeries], target_order: usize) -> Vec<QSeries> {
        let mut out = vec![zero_like(f); target_order];
        for (mu, img) in self.images.iter().enumerate() {
            for &(d, c) in img {
                out[d] = out[d].add(&f[mu].scale(&int(c as i64)));
            }
        }
        out
    }
}

/// The map `ψ_Δ : φ_μ ↦ Σ_δ χ_Δ(δ) φ_δ` from `L'/L` to `L'/ΔL`, the sum running over
/// `δ` with `Q_Δ(δ) ≡ sgn(Δ)Q(μ) (mod 1)` and `δ ≡ rμ (mod L)`.
///
/// `ld` must be `l.rescaled(Δ)`; `chi` evaluates the genus character on ambient vectors of `L'`.
pub fn psi_delta(l: &EmbeddedLattice, ld: &EmbeddedLattice, delta: i64, r: i64, chi: impl Fn(&[Rational]) -> i32) -> Result<PsiMap> {
    if (delta - r * r).rem_euclid(4) != 0 {
        return Err(Error::InvalidInput(format!("Δ = {delta} is not ≡ r² = {} mod 4", r * r)));
    }
    let sgn = int(delta.signum());
    let gl = l.group();
    let gd = ld.group();
    let mut images = Vec::with_capacity(gl.order());
    for mu in 0..gl.order() {
        let vmu = l.disc_vector(mu);
        let target = frac(&(gl.q(mu) * &sgn));
        let mut img = Vec::new();
        for d in 0..gd.order() {
            if gd.q(d) != &target {
                continue;
            }
            let vd = ld.disc_vector(d);
            let diff: Vec<Rational> = vd.iter().zip(&vmu).map(|(a, b)| a - b * int(r)).collect();
            if !l.contains(&diff) {
                continue;
            }
            let c = chi(&vd);
            if c != 0 {
                img.push((d, c));
            }
        }
        images.push(img);
    }
    Ok(PsiMap { images })
}
