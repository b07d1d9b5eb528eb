//! Weil representation matrices for the generators `T` and `S`.
//!
//! These are dense complex matrices in double precision.  They serve the
//! property tests only; the evaluation pipeline works with q-series and never
//! materializes the representation.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::group::DiscGroup;
use crate::arith::rational::to_f64;

/// Dense complex matrix, row-major; column `μ` is the image of `φ_μ`.
pub type CMatrix = Vec<Vec<Complex64>>;

fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// `(ρ(T), ρ(S))` for the Weil representation of the lattice underlying `g`.
///
/// `ρ(T)φ_μ = e(Q(μ))φ_μ` and `ρ(S)φ_μ = e((b⁻−b⁺)/8)/√|L'/L| · Σ_ν e(−(μ,ν))φ_ν`;
/// for signature `(n, 2)` the scalar is `e((2−n)/8)`.
pub fn weil_rep_generators(g: &DiscGroup) -> (CMatrix, CMatrix) {
    let n = g.order();
    let (bp, bm) = g.lattice().signature();
    let mut t = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = e(to_f64(g.q(i)));
    }
    let scalar = e((bm as f64 - bp as f64) / 8.0) / (n as f64).sqrt();
    let s = (0..n).map(|nu| (0..n).map(|mu| scalar * e(-to_f64(&g.bilinear(mu, nu)))).collect()).collect();
    (t, s)
}

/// Matrix product.
pub fn cmatmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n).map(|i| (0..m).map(|j| a[i].iter().zip(b).fold(Complex64::new(0.0, 0.0), |acc, (x, row)| acc + x * row[j])).collect()).collect()
}

/// Conjugate transpose.
pub fn adjoint(a: &CMatrix) -> CMatrix {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j].conj()).collect()).collect()
}

/// Largest entrywise distance to the identity.
pub fn distance_to_identity(a: &CMatrix) -> f64 {
    let mut d: f64 = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            d = d.max((x - Complex64::new(want, 0.0)).norm());
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discforms::EvenLattice;

    #[test]
    fn level_one_t_matrix() {
        let l = EvenLattice::new(vec![vec![0, 0, 1], vec![0, -2, 0], vec![1, 0, 0]]).unwrap();
        let (t, s) = weil_rep_generators(&l.discriminant_group().unwrap());
        assert!((t[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((t[1][1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(distance_to_identity(&cmatmul(&s, &adjoint(&s))) < 1e-12);
    }

    #[test]
    fn trivial_group_scalar() {
        let l = EvenLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (t, s) = weil_rep_generators(&l.discriminant_group().unwrap());
        assert_eq!(t.len(), 1);
        assert!((s[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
