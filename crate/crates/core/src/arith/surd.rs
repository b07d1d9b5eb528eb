//! Exact numbers of the form `a·√r` with rational `a` and squarefree integer `r ≥ 1`.
//!
//! Weight-3/2 theta series and the odd-weight CM formula produce coefficients
//! in `ℚ·√r` for a single radicand `r`; keeping them symbolic lets the final
//! coefficient functional be compared exactly with published vectors such as
//! `(3/√21)·(…)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bigreal::BigReal;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `coeff · √radicand` with `radicand` a squarefree positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    /// Rational coefficient.
    pub coeff: Rational,
    /// Squarefree positive radicand.
    pub radicand: BigInt,
}

fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    // n = s^2 · f with f squarefree; trial division (radicands here are tiny).
    let mut n = n.clone();
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        s *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            f *= &p;
        }
        p += 1;
    }
    f *= n;
    (s, f)
}

impl Surd {
    /// The rational `a` (radicand 1).
    pub fn rational(a: Rational) -> Self {
        Surd { coeff: a, radicand: BigInt::one() }
    }

    /// `a · √r` for rational `r > 0`, normalised to a squarefree integer radicand.
    pub fn new(a: Rational, r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidInput(format!("surd radicand must be positive, got {r}")));
        }
        // √(p/q) = √(pq)/q
        let pq = r.numer() * r.denom();
        let (s, f) = squarefree_split(&pq);
        let coeff = a * Rational::new(s, r.denom().clone());
        Ok(Surd { coeff, radicand: f })
    }

    /// `√r` for rational `r > 0`.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        Self::new(Rational::one(), r)
    }

    /// `true` if the value is zero.
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Product (always representable).
    pub fn mul(&self, o: &Self) -> Self {
        let g = self.radicand.gcd(&o.radicand);
        // √a·√b = g·√(ab/g²)
        let rad = (&self.radicand / &g) * (&o.radicand / &g);
        Surd { coeff: &self.coeff * &o.coeff * Rational::from_integer(g), radicand: rad }
    }

    /// Multiplication by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        Surd { coeff: &self.coeff * r, radicand: self.radicand.clone() }
    }

    /// Sum; both operands must share the radicand unless one of them is zero.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if self.radicand != o.radicand {
            return Err(Error::Incompatible(format!("cannot add √{} and √{}", self.radicand, o.radicand)));
        }
        Ok(Surd { coeff: &self.coeff + &o.coeff, radicand: self.radicand.clone() })
    }

    /// Numerical value at `prec` bits.
    pub fn to_big(&self, prec: u32) -> BigReal {
        let c = BigReal::from_rational(&self.coeff, prec);
        let r = BigReal::from_rational(&Rational::from_integer(self.radicand.clone()), prec).sqrt();
        &c * &r
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.coeff) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn normalisation() {
        let s = Surd::new(int(3), &rat(1, 21)).unwrap();
        assert_eq!(s.radicand, BigInt::from(21));
        assert_eq!(s.coeff, rat(1, 7));
        let t = Surd::sqrt(&int(12)).unwrap();
        assert_eq!(t, Surd { coeff: int(2), radicand: BigInt::from(3) });
    }

    #[test]
    fn products() {
        let a = Surd::sqrt(&int(3)).unwrap();
        let b = Surd::sqrt(&int(7)).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.radicand, BigInt::from(21));
        assert_eq!(a.mul(&a), Surd::rational(int(3)));
    }
}
