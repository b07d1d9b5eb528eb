//! Even lattices given by Gram matrices, optionally embedded in an ambient rational quadratic space.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::group::DiscGroup;
use crate::arith::linalg::{self, QMatrix};
use crate::arith::rational::{int, Rational};
use crate::error::{Error, Result};

/// Even lattice: integral symmetric Gram matrix with even diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
    signature: (usize, usize),
}

/// Signature `(b⁺, b⁻)` of a nondegenerate symmetric rational matrix, by congruence diagonalisation.
pub fn signature_of(g: &QMatrix) -> Result<(usize, usize)> {
    let n = g.len();
    let mut m = g.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        // find a nonzero diagonal pivot in the trailing block
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // e_k ← e_k + e_j makes the diagonal 2 m[k][j] ≠ 0 (diagonals vanish here)
                for c in 0..n {
                    let x = m[j][c].clone();
                    m[k][c] += x;
                }
                for r in 0..n {
                    let x = m[r][j].clone();
                    m[r][k] += x;
                }
            } else {
                return Err(Error::Degenerate("Gram matrix is singular".into()));
            }
        }
        let p = m[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            for c in k..n {
                let x = &f * &m[k][c];
                m[i][c] -= x;
            }
            for r in k..n {
                let x = &f * &m[r][k];
                m[r][i] -= x;
            }
        }
    }
    Ok((pos, neg))
}

impl EvenLattice {
    /// Validates symmetry, evenness and nondegeneracy, and computes the signature.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Degenerate("Gram matrix must be square".into()));
        }
        for i in 0..n {
            if gram[i][i] % 2 != 0 {
                return Err(Error::Degenerate(format!("diagonal entry {} is odd", gram[i][i])));
            }
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Degenerate("Gram matrix is not symmetric".into()));
                }
            }
        }
        let q: QMatrix = gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let signature = if n == 0 { (0, 0) } else { signature_of(&q)? };
        Ok(EvenLattice { gram, signature })
    }

    /// Gram matrix.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Gram matrix over ℚ.
    pub fn gram_q(&self) -> QMatrix {
        self.gram.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Signature `(b⁺, b⁻)`.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// Determinant of the Gram matrix.
    pub fn det(&self) -> BigInt {
        let d = linalg::det(&self.gram_q());
        d.to_integer()
    }

    /// Bilinear form on basis-coordinate vectors.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    acc += xi * yj * int(self.gram[i][j]);
                }
            }
        }
        acc
    }

    /// Quadratic form `Q(x) = (x, x)/2` on basis-coordinate vectors.
    pub fn q(&self, x: &[Rational]) -> Rational {
        self.bilinear(x, x) / int(2)
    }

    /// The same lattice with Gram matrix multiplied by `k` (must stay even).
    pub fn scaled(&self, k: i64) -> Result<Self> {
        Self::new(self.gram.iter().map(|r| r.iter().map(|&x| x * k).collect()).collect())
    }

    /// Discriminant group `L'/L`.
    pub fn discriminant_group(&self) -> Result<DiscGroup> {
        DiscGroup::new(self)
    }
}

/// Lattice with a basis inside an ambient rational quadratic space.
///
/// `space_gram` is the bilinear-form matrix of the ambient space and `basis`
/// lists the basis vectors (rows) in ambient coordinates.  The intrinsic Gram
/// matrix `B·A·Bᵗ` must be even integral.
#[derive(Clone, Debug)]
pub struct EmbeddedLattice {
    space_gram: QMatrix,
    basis: QMatrix,
    lattice: EvenLattice,
    group: DiscGroup,
}

impl EmbeddedLattice {
    /// Builds the lattice spanned by `basis` inside the space with form `space_gram`.
    pub fn new(space_gram: QMatrix, basis: QMatrix) -> Result<Self> {
        let bt: QMatrix = (0..space_gram.len()).map(|i| basis.iter().map(|r| r[i].clone()).collect()).collect();
        let g = linalg::matmul(&linalg::matmul(&basis, &space_gram), &bt);
        let mut gi = Vec::with_capacity(g.len());
        for row in &g {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                if !x.is_integer() {
                    return Err(Error::Degenerate(format!("Gram entry {x} is not integral")));
                }
                r.push(x.to_integer().to_i64().ok_or_else(|| Error::Degenerate("Gram entry too large".into()))?);
            }
            gi.push(r);
        }
        let lattice = EvenLattice::new(gi)?;
        let group = DiscGroup::new(&lattice)?;
        Ok(EmbeddedLattice { space_gram, basis, lattice, group })
    }

    /// Replaces the discriminant group by one with prescribed generators (basis coordinates).
    pub fn with_generators(mut self, gens: Vec<Vec<Rational>>, orders: Vec<u64>) -> Result<Self> {
        self.group = DiscGroup::with_generators(&self.lattice, gens, orders)?;
        Ok(self)
    }

    /// Intrinsic even lattice.
    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    /// Discriminant group.
    pub fn group(&self) -> &DiscGroup {
        &self.group
    }

    /// Basis (rows, ambient coordinates).
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// Ambient bilinear form matrix.
    pub fn space_gram(&self) -> &QMatrix {
        &self.space_gram
    }

    /// Ambient bilinear form.
    pub fn ambient_bilinear(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                if !self.space_gram[i][j].is_zero() {
                    acc += vi * wj * &self.space_gram[i][j];
                }
            }
        }
        acc
    }

    /// Ambient quadratic form.
    pub fn ambient_q(&self, v: &[Rational]) -> Rational {
        self.ambient_bilinear(v, v) / int(2)
    }

    /// Basis coordinates of an ambient vector in the rational span, or `None`.
    pub fn coords_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        // solve x·B = v, i.e. Bᵗ xᵗ = vᵗ
        let n = self.space_gram.len();
        let bt: QMatrix = (0..n).map(|i| self.basis.iter().map(|r| r[i].clone()).collect()).collect();
        linalg::solve(&bt, v).map(|(x, _)| x)
    }

    /// Ambient vector with the given basis coordinates.
    pub fn vector_of(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.space_gram.len();
        (0..n).map(|i| x.iter().zip(&self.basis).fold(Rational::zero(), |a, (xi, b)| a + xi * &b[i])).collect()
    }

    /// `true` if the ambient vector lies in the dual lattice `L'`.
    pub fn in_dual(&self, v: &[Rational]) -> bool {
        self.coords_of(v).is_some() && self.basis.iter().all(|b| self.ambient_bilinear(v, b).is_integer())
    }

    /// `true` if the ambient vector lies in the lattice itself.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords_of(v).is_some_and(|x| x.iter().all(|c| c.is_integer()))
    }

    /// Index in the discriminant group of an ambient vector of `L'`.
    pub fn disc_index(&self, v: &[Rational]) -> Option<usize> {
        if !self.in_dual(v) {
            return None;
        }
        let x = self.coords_of(v)?;
        self.group.index_of(&x)
    }

    /// Ambient representative of the discriminant-group element with index `i`.
    pub fn disc_vector(&self, i: usize) -> Vec<Rational> {
        self.vector_of(self.group.representative(i))
    }

    /// The rescaled lattice `ΔL` with form `Q/|Δ|` in the same ambient space.
    pub fn rescaled(&self, delta: i64) -> Result<Self> {
        let d = int(delta);
        let ad = int(delta.abs());
        let basis = self.basis.iter().map(|r| r.iter().map(|x| x * &d).collect()).collect();
        let space = self.space_gram.iter().map(|r| r.iter().map(|x| x / &ad).collect()).collect();
        Self::new(space, basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let l = EvenLattice::new(vec![vec![0, 0, 1], vec![0, -2, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(l.signature(), (1, 2));
        let n = EvenLattice::new(vec![vec![-2, 1], vec![1, -4]]).unwrap();
        assert_eq!(n.signature(), (0, 2));
        assert!(EvenLattice::new(vec![vec![1]]).is_err());
        assert!(EvenLattice::new(vec![vec![2, 2], vec![2, 2]]).is_err());
    }
}
