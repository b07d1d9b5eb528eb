//! Even lattices, discriminant groups, Weil representation matrices, and the
//! maps relating vector-valued forms on a lattice to those on its sublattices
//! and rescalings.

pub mod group;
pub mod lattice;
pub mod ops;
pub mod weil;

pub use group::{discriminant_group, DiscGroup, DiscVector};
pub use lattice::{signature_of, EmbeddedLattice, EvenLattice};
pub use ops::{psi_delta, restrict_to_orthogonal_sum, restrict_to_sublattice, PsiMap};
pub use weil::weil_rep_generators;

use crate::error::Result;

/// The rescaled lattice `ΔM` with quadratic form `Q/|Δ|` (Gram matrix `|Δ|·G`).
pub fn rescale_lattice(m: &EvenLattice, delta: i64) -> Result<EvenLattice> {
    if delta == 0 {
        return Err(crate::error::Error::InvalidInput("Δ must be nonzero".into()));
    }
    m.scaled(delta.abs())
}

/// The level-one lattice `L = {(a, b, c) : b ∈ 2ℤ}` in the space of trace-zero matrices
/// `[[b/2, −a], [c, −b/2]]` with `Q = ac − b²/4`; `L'/L ≅ ℤ/2` by the parity of `b`.
pub fn level_one_embedded() -> EmbeddedLattice {
    use crate::arith::rational::{int, rat};
    let space = vec![vec![int(0), int(0), int(1)], vec![int(0), rat(-1, 2), int(0)], vec![int(1), int(0), int(0)]];
    let basis = vec![vec![int(1), int(0), int(0)], vec![int(0), int(2), int(0)], vec![int(0), int(0), int(1)]];
    EmbeddedLattice::new(space, basis).expect("the level-one lattice is even and nondegenerate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qseries::QSeries;
    use crate::arith::rational::{int, rat, Rational};

    fn level_one() -> EmbeddedLattice {
        level_one_embedded()
    }

    #[test]
    fn rescaling_orders() {
        let n = EvenLattice::new(vec![vec![-2, 1], vec![1, -4]]).unwrap();
        assert_eq!(rescale_lattice(&n, -3).unwrap().discriminant_group().unwrap().order(), 63);
        assert_eq!(rescale_lattice(&n, 1).unwrap(), n);
        let l = level_one();
        assert_eq!(l.rescaled(-3).unwrap().group().order(), 54);
    }

    #[test]
    fn restriction_to_self_is_identity() {
        let l = level_one();
        let f = vec![QSeries::monomial(&int(-1), int(1)), QSeries::monomial(&rat(-1, 4), int(3))];
        assert_eq!(restrict_to_sublattice(&f, &l, &l).unwrap(), f);
    }

    #[test]
    fn psi_trivial_twist_is_identity() {
        let l = level_one();
        let ld = l.rescaled(1).unwrap();
        let psi = psi_delta(&l, &ld, 1, 1, |_: &[Rational]| 1).unwrap();
        for (mu, img) in psi.images.iter().enumerate() {
            assert_eq!(img.len(), 1);
            assert_eq!(ld.disc_vector(img[0].0), l.disc_vector(mu));
        }
        assert!(psi_delta(&l, &ld, -3, 0, |_: &[Rational]| 1).is_err());
    }
}
