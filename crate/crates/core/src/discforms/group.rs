//! Discriminant groups `L'/L` with their ℚ/ℤ-valued quadratic forms.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::lattice::EvenLattice;
use crate::arith::linalg::smith_normal_form;
use crate::arith::rational::{frac, int, Rational};
use crate::error::{Error, Result};

/// Coordinates of a discriminant-group element with respect to the generator decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscVector(pub Vec<u64>);

/// Finite abelian group `L'/L` with its quadratic form.
///
/// Elements are numbered `0..order()`; index 0 is always the zero element.
/// Each element has a canonical representative in basis coordinates with all
/// entries in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct DiscGroup {
    lattice: EvenLattice,
    orders: Vec<u64>,
    gens: Vec<Vec<Rational>>,
    reps: Vec<Vec<Rational>>,
    coords: Vec<DiscVector>,
    index: HashMap<Vec<Rational>, usize>,
    qvals: Vec<Rational>,
}

fn canonical(x: &[Rational]) -> Vec<Rational> {
    x.iter().map(frac).collect()
}

impl DiscGroup {
    /// Computes `L'/L` from the Smith normal form of the Gram matrix.
    pub fn new(lattice: &EvenLattice) -> Result<Self> {
        let n = lattice.rank();
        if n == 0 {
            return Self::build(lattice, Vec::new(), Vec::new());
        }
        let g: Vec<Vec<BigInt>> = lattice.gram().iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let (d, _u, v) = smith_normal_form(&g);
        if d.iter().any(|x| x.is_zero()) {
            return Err(Error::Degenerate("Gram matrix is singular".into()));
        }
        // L' = G⁻¹ℤⁿ = V·D⁻¹ℤⁿ: generators V e_i / d_i.
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (i, di) in d.iter().enumerate() {
            if di.is_one() {
                continue;
            }
            let col: Vec<Rational> = (0..n).map(|r| Rational::new(v[r][i].clone(), di.clone())).collect();
            gens.push(col);
            orders.push(di.to_u64().ok_or_else(|| Error::Degenerate("group too large".into()))?);
        }
        Self::build(lattice, gens, orders)
    }

    /// Uses prescribed generators (basis coordinates of vectors of `L'`) with the given orders;
    /// fails unless they give a bijective labelling of `L'/L`.
    pub fn with_generators(lattice: &EvenLattice, gens: Vec<Vec<Rational>>, orders: Vec<u64>) -> Result<Self> {
        let reference = Self::new(lattice)?;
        let total: u64 = orders.iter().product();
        if total as usize != reference.order() {
            return Err(Error::Data(format!("generator orders give {total} elements, group has {}", reference.order())));
        }
        for (g, &o) in gens.iter().zip(&orders) {
            if reference.index_of(g).is_none() {
                return Err(Error::Data("generator is not in the dual lattice".into()));
            }
            let m: Vec<Rational> = g.iter().map(|x| x * int(o as i64)).collect();
            if !m.iter().all(|x| x.is_integer()) {
                return Err(Error::Data(format!("generator order is not {o}")));
            }
        }
        let grp = Self::build(lattice, gens, orders)?;
        if grp.index.len() != grp.order() {
            return Err(Error::Data("generators do not label the group bijectively".into()));
        }
        Ok(grp)
    }

    fn build(lattice: &EvenLattice, gens: Vec<Vec<Rational>>, orders: Vec<u64>) -> Result<Self> {
        let n = lattice.rank();
        let total: u64 = orders.iter().product();
        let mut reps = Vec::with_capacity(total as usize);
        let mut coords = Vec::with_capacity(total as usize);
        let mut index = HashMap::new();
        let mut qvals = Vec::with_capacity(total as usize);
        let mut c = vec![0u64; orders.len()];
        for _ in 0..total {
            let mut x = vec![Rational::zero(); n];
            for (k, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    for (xi, gi) in x.iter_mut().zip(&gens[k]) {
                        *xi += gi * int(ck as i64);
                    }
                }
            }
            let x = canonical(&x);
            let q = frac(&lattice.q(&x));
            index.entry(x.clone()).or_insert(reps.len());
            qvals.push(q);
            reps.push(x);
            coords.push(DiscVector(c.clone()));
            // increment mixed-radix counter
            for k in 0..c.len() {
                c[k] += 1;
                if c[k] < orders[k] {
                    break;
                }
                c[k] = 0;
            }
        }
        Ok(DiscGroup { lattice: lattice.clone(), orders, gens, reps, coords, index, qvals })
    }

    /// The representative of `{i, −i}` with lexicographically smaller coordinates; used
    /// wherever coefficients satisfy `c(m, μ) = c(m, −μ)` and are stored once per pair.
    pub fn fold(&self, i: usize) -> usize {
        let n = self.neg(i);
        if self.coords[n] < self.coords[i] {
            n
        } else {
            i
        }
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Orders of the generators (each > 1).
    pub fn generator_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Generators in basis coordinates.
    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.gens
    }

    /// Canonical representative (basis coordinates in `[0,1)`) of element `i`.
    pub fn representative(&self, i: usize) -> &[Rational] {
        &self.reps[i]
    }

    /// Generator coordinates of element `i`.
    pub fn coords(&self, i: usize) -> &DiscVector {
        &self.coords[i]
    }

    /// Index of the element with the given generator coordinates (reduced modulo the orders).
    pub fn index_of_coords(&self, c: &[i64]) -> Option<usize> {
        if c.len() != self.orders.len() {
            return None;
        }
        let mut idx = 0usize;
        let mut radix = 1usize;
        for (ck, &o) in c.iter().zip(&self.orders) {
            idx += (ck.rem_euclid(o as i64) as usize) * radix;
            radix *= o as usize;
        }
        Some(idx)
    }

    /// Index of the class of a basis-coordinate vector of `L'` (`None` if not in `L'`).
    pub fn index_of(&self, x: &[Rational]) -> Option<usize> {
        self.index.get(&canonical(x)).copied()
    }

    /// `Q(μ)` reduced to `[0, 1)`.
    pub fn q(&self, i: usize) -> &Rational {
        &self.qvals[i]
    }

    /// Bilinear form `(μ, ν)` reduced to `[0, 1)`.
    pub fn bilinear(&self, i: usize, j: usize) -> Rational {
        frac(&self.lattice.bilinear(&self.reps[i], &self.reps[j]))
    }

    /// Index of `μ + ν`.
    pub fn add(&self, i: usize, j: usize) -> usize {
        let x: Vec<Rational> = self.reps[i].iter().zip(&self.reps[j]).map(|(a, b)| a + b).collect();
        self.index_of(&x).expect("closed under addition")
    }

    /// Index of `−μ`.
    pub fn neg(&self, i: usize) -> usize {
        let x: Vec<Rational> = self.reps[i].iter().map(|a| -a).collect();
        self.index_of(&x).expect("closed under negation")
    }

    /// Index of `k·μ`.
    pub fn mul(&self, k: i64, i: usize) -> usize {
        let x: Vec<Rational> = self.reps[i].iter().map(|a| a * int(k)).collect();
        self.index_of(&x).expect("closed under multiplication")
    }

    /// Underlying lattice.
    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }
}

/// Discriminant group of an even lattice (free-function form).
pub fn discriminant_group(l: &EvenLattice) -> Result<DiscGroup> {
    DiscGroup::new(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn level_one_lattice() {
        let l = EvenLattice::new(vec![vec![0, 0, 1], vec![0, -2, 0], vec![1, 0, 0]]).unwrap();
        let g = l.discriminant_group().unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.q(1), &rat(3, 4)); // −1/4 mod 1
    }

    #[test]
    fn twisted_binary() {
        let l = EvenLattice::new(vec![vec![-6, 3], vec![3, -12]]).unwrap();
        let g = l.discriminant_group().unwrap();
        assert_eq!(g.order(), 63);
        assert_eq!(g.generator_orders(), &[3, 21]);
    }

    #[test]
    fn unimodular_is_trivial() {
        let l = EvenLattice::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(l.discriminant_group().unwrap().order(), 1);
    }
}
