//! Arbitrary-precision real and complex numbers on top of MPFR.
//!
//! [`BigReal`] is a thin wrapper around `rug::Float`; the working precision is
//! the float's own precision.  The precision contract used by all callers is
//! "recompute at doubled precision and compare" (see [`agree_bits`]).
//! [`BigComplex`] is a minimal pair of floats providing the handful of complex
//! operations needed for polynomial root refinement and embeddings.

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::rational::Rational;

/// Arbitrary-precision real number (precision in bits = the float's precision).
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct BigReal(pub Float);

impl Deref for BigReal {
    type Target = Float;
    fn deref(&self) -> &Float {
        &self.0
    }
}

impl BigReal {
    /// Value `x` at `prec` bits.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        BigReal(Float::with_val(prec, x))
    }

    /// Exact rational rounded to `prec` bits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let n = Float::with_val(prec, rug::Integer::from_str_radix(&r.numer().to_str_radix(16), 16).unwrap());
        let d = Float::with_val(prec, rug::Integer::from_str_radix(&r.denom().to_str_radix(16), 16).unwrap());
        BigReal(n / d)
    }

    /// The integer `n` at `prec` bits.
    pub fn from_i64(n: i64, prec: u32) -> Self {
        BigReal(Float::with_val(prec, n))
    }

    /// π at `prec` bits.
    pub fn pi(prec: u32) -> Self {
        BigReal(Float::with_val(prec, Constant::Pi))
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Natural logarithm.
    pub fn ln(&self) -> Self {
        BigReal(self.0.clone().ln())
    }

    /// Square root.
    pub fn sqrt(&self) -> Self {
        BigReal(self.0.clone().sqrt())
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        BigReal(self.0.clone().abs())
    }

    /// Gamma function.
    pub fn gamma(&self) -> Self {
        BigReal(self.0.clone().gamma())
    }

    /// Real power.
    pub fn powf(&self, e: &BigReal) -> Self {
        BigReal(self.0.clone().pow(&e.0))
    }

    /// Integer power.
    pub fn powi(&self, e: i32) -> Self {
        BigReal(self.0.clone().pow(e))
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.0.to_string_radix(10, Some(digits))
    }

    /// Fixed-point decimal string with `frac_digits` digits after the point.
    pub fn to_fixed(&self, frac_digits: usize) -> String {
        let scale = Float::with_val(self.prec().max(64) + 64, 10u32).pow(frac_digits as u32);
        let scaled = Float::with_val(self.prec().max(64) + 64, &self.0 * &scale);
        let int = scaled.round().to_integer().unwrap_or_default();
        let neg = int < 0;
        let s = int.abs().to_string();
        let s = if s.len() <= frac_digits { format!("{}{}", "0".repeat(frac_digits + 1 - s.len()), s) } else { s };
        let (a, b) = s.split_at(s.len() - frac_digits);
        format!("{}{}{}{}", if neg { "-" } else { "" }, a, if frac_digits > 0 { "." } else { "" }, b)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize;
        write!(f, "{}", self.to_decimal(digits.max(1)))
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, o: &BigReal) -> BigReal {
        BigReal(Float::with_val(self.prec().max(o.prec()), &self.0 + &o.0))
    }
}
impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, o: &BigReal) -> BigReal {
        BigReal(Float::with_val(self.prec().max(o.prec()), &self.0 - &o.0))
    }
}
impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, o: &BigReal) -> BigReal {
        BigReal(Float::with_val(self.prec().max(o.prec()), &self.0 * &o.0))
    }
}
impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

/// `true` if `a` and `b` agree to within `2^{-bits}` relative (or absolute near zero).
pub fn agree_bits(a: &BigReal, b: &BigReal, bits: u32) -> bool {
    let p = a.prec().max(b.prec());
    let diff = Float::with_val(p, &a.0 - &b.0).abs();
    let scale = Float::with_val(p, a.0.clone().abs()).max(&Float::with_val(p, 1));
    let tol = Float::with_val(p, Float::i_exp(1, -(bits as i32))) * scale;
    diff <= tol
}

/// Arbitrary-precision complex number as a pair of MPFR floats.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    /// Real part.
    pub re: Float,
    /// Imaginary part.
    pub im: Float,
}

impl BigComplex {
    /// `re + i·im` at `prec` bits.
    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    /// Zero at `prec` bits.
    pub fn zero(prec: u32) -> Self {
        Self::from_f64(0.0, 0.0, prec)
    }

    /// The real rational `r` at `prec` bits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        BigComplex { re: BigReal::from_rational(r, prec).0, im: Float::with_val(prec, 0) }
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Changes the precision (keeping the value, rounded).
    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    /// `|z|`.
    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// `log |z|`, computed as `½ log |z|²`.
    pub fn ln_abs(&self) -> Float {
        self.norm_sqr().ln() / 2u32
    }

    /// Complex product.
    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        BigComplex {
            re: Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im),
            im: Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re),
        }
    }

    /// Complex sum.
    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }

    /// Complex difference.
    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }

    /// Complex quotient.
    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        let d = o.norm_sqr();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        BigComplex { re: re / &d, im: im / &d }
    }

    /// Multiplication by a real rational.
    pub fn scale_rational(&self, r: &Rational) -> Self {
        let f = BigReal::from_rational(r, self.prec()).0;
        BigComplex { re: Float::with_val(self.prec(), &self.re * &f), im: Float::with_val(self.prec(), &self.im * &f) }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `(re, im)` as `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = BigReal::from_rational(&rat(1, 2), 200).gamma();
        let s = BigReal::pi(200).sqrt();
        assert!(agree_bits(&g, &s, 190));
    }

    #[test]
    fn fixed_rendering() {
        let x = BigReal::from_rational(&rat(-2, 3), 128);
        assert_eq!(x.to_fixed(5), "-0.66667");
        let y = BigReal::from_rational(&rat(5, 4), 128);
        assert_eq!(y.to_fixed(2), "1.25");
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = BigComplex::from_f64(1.5, -2.0, 128);
        let b = BigComplex::from_f64(0.25, 3.0, 128);
        let c = a.mul(&b).div(&b);
        assert!((c.re.to_f64() - 1.5).abs() < 1e-30);
        assert!((c.im.to_f64() + 2.0).abs() < 1e-30);
    }
}
