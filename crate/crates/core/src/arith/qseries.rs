//! Truncated q-expansions with rational exponents and exact rational coefficients.
//!
//! A [`QSeries`] stores one exponent denominator `D` for the whole series; the
//! coefficient at index `n` belongs to the exponent `n / D`.  Coefficients are
//! kept densely from the first stored index up to the truncation order, above
//! which nothing is known.  Exact (finite) series carry no truncation order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Truncated Laurent series in `q^{1/D}` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    den: i64,
    start: i64,
    coeffs: Vec<Rational>,
    /// Exponents `n / den` with `n >= prec` are unknown; `None` means exact.
    prec: Option<i64>,
}

impl QSeries {
    /// The zero series known up to (excluding) exponent `order`.
    pub fn zero(order: &Rational) -> Self {
        let den = order.denom().to_i64().expect("exponent denominator fits in i64");
        let prec = (order * int(den)).to_integer().to_i64().expect("order fits in i64");
        QSeries { den, start: prec, coeffs: Vec::new(), prec: Some(prec) }
    }

    /// The exact zero series.
    pub fn exact_zero() -> Self {
        QSeries { den: 1, start: 0, coeffs: Vec::new(), prec: None }
    }

    /// `c · q^e`, exact.
    pub fn monomial(e: &Rational, c: Rational) -> Self {
        let den = e.denom().to_i64().expect("exponent denominator fits in i64");
        let n = e.numer().to_i64().expect("exponent fits in i64");
        QSeries { den, start: n, coeffs: vec![c], prec: None }.normalized()
    }

    /// Builds a series from integer-indexed coefficients `coeffs[i]` at exponent
    /// `(start + i) / den`, known below index `prec` (in units of `1/den`).
    pub fn from_parts(den: i64, start: i64, coeffs: Vec<Rational>, prec: Option<i64>) -> Self {
        assert!(den > 0, "exponent denominator must be positive");
        let mut s = QSeries { den, start, coeffs, prec };
        if let Some(p) = prec {
            let keep = (p - s.start).max(0) as usize;
            s.coeffs.truncate(keep);
        }
        s.normalized()
    }

    /// Integer-exponent series `Σ c_i q^{start+i}` known to order `prec` (exclusive).
    pub fn from_int_coeffs(start: i64, coeffs: &[i64], prec: Option<i64>) -> Self {
        Self::from_parts(1, start, coeffs.iter().map(|&c| int(c)).collect(), prec)
    }

    /// Builds a series from `(exponent, coefficient)` pairs, truncated at `order`.
    pub fn from_terms(terms: &[(Rational, Rational)], order: Option<&Rational>) -> Self {
        let mut den = BigInt::one();
        for (e, _) in terms {
            den = den.lcm(e.denom());
        }
        if let Some(o) = order {
            den = den.lcm(o.denom());
        }
        let den = den.to_i64().expect("denominator fits");
        let prec = order.map(|o| (o * int(den)).to_integer().to_i64().unwrap());
        let idx: Vec<i64> = terms.iter().map(|(e, _)| (e * int(den)).to_integer().to_i64().unwrap()).collect();
        let start = idx.iter().copied().min().unwrap_or(prec.unwrap_or(0));
        let end = idx.iter().copied().max().map(|m| m + 1).unwrap_or(start);
        let mut coeffs = vec![Rational::zero(); (end - start).max(0) as usize];
        for (i, (_, c)) in idx.iter().zip(terms) {
            coeffs[(i - start) as usize] += c;
        }
        Self::from_parts(den, start, coeffs, prec)
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = self.prec.unwrap_or(0);
        }
        // Reduce the exponent denominator if possible.
        let mut g = self.den;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.start + i as i64));
            }
        }
        if let Some(p) = self.prec {
            g = g.gcd(&p);
        }
        if g > 1 && !self.coeffs.is_empty() {
            let step = g;
            let new_start = self.start / step;
            let mut coeffs = Vec::with_capacity(self.coeffs.len() / step as usize + 1);
            let mut n = self.start;
            let end = self.start + self.coeffs.len() as i64;
            while n < end {
                coeffs.push(self.coeffs[(n - self.start) as usize].clone());
                n += step;
            }
            self.den /= step;
            self.start = new_start;
            self.prec = self.prec.map(|p| p / step);
            self.coeffs = coeffs;
        } else if g > 1 && self.coeffs.is_empty() {
            self.den /= g;
            self.prec = self.prec.map(|p| p / g);
            self.start = self.prec.unwrap_or(0);
        }
        self
    }

    /// Exponent denominator `D` (exponents are integers divided by `D`).
    pub fn den(&self) -> i64 {
        self.den
    }

    /// Truncation order as a rational, `None` for exact series.
    pub fn order(&self) -> Option<Rational> {
        self.prec.map(|p| Rational::new(BigInt::from(p), BigInt::from(self.den)))
    }

    /// `true` if no coefficient is nonzero (known part only).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(Rational::new(BigInt::from(self.start), BigInt::from(self.den)))
        }
    }

    /// Coefficient at exponent `e`; `None` if `e` is at or beyond the truncation order.
    pub fn coeff(&self, e: &Rational) -> Option<Rational> {
        if let Some(o) = self.order() {
            if *e >= o {
                return None;
            }
        }
        let scaled = e * int(self.den);
        if !scaled.is_integer() {
            return Some(Rational::zero());
        }
        let n = scaled.to_integer().to_i64()?;
        let i = n - self.start;
        if i < 0 || i as usize >= self.coeffs.len() {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[i as usize].clone())
        }
    }

    /// Iterator over the nonzero `(exponent, coefficient)` pairs below the truncation order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let den = BigInt::from(self.den);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (Rational::new(BigInt::from(self.start + i as i64), den.clone()), c))
    }

    /// Rewrites the series with exponent denominator `new_den` (a multiple of the current one).
    fn with_den(&self, new_den: i64) -> Self {
        assert!(new_den % self.den == 0);
        let k = new_den / self.den;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); if self.coeffs.is_empty() { 0 } else { (self.coeffs.len() - 1) * k as usize + 1 }];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        QSeries { den: new_den, start: self.start * k, coeffs, prec: self.prec.map(|p| p * k) }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let d = a.den.lcm(&b.den);
        (a.with_den(d), b.with_den(d))
    }

    /// Truncates to exponents `< order`.
    pub fn truncate(&self, order: &Rational) -> Self {
        let d = self.den.lcm(&order.denom().to_i64().unwrap());
        let s = self.with_den(d);
        let p = (order * int(d)).to_integer().to_i64().unwrap();
        let p = match s.prec {
            Some(q) => q.min(p),
            None => p,
        };
        Self::from_parts(d, s.start, s.coeffs, Some(p))
    }

    /// Sum; the truncation order is the minimum of the operands'.
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let prec = match (a.prec, b.prec) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        if a.coeffs.is_empty() && b.coeffs.is_empty() {
            return Self::from_parts(a.den, prec.unwrap_or(0), Vec::new(), prec);
        }
        let start = match (a.coeffs.is_empty(), b.coeffs.is_empty()) {
            (true, _) => b.start,
            (_, true) => a.start,
            _ => a.start.min(b.start),
        };
        let end_a = a.start + a.coeffs.len() as i64;
        let end_b = b.start + b.coeffs.len() as i64;
        let end = end_a.max(end_b);
        let mut coeffs = vec![Rational::zero(); (end - start).max(0) as usize];
        for (i, c) in a.coeffs.iter().enumerate() {
            coeffs[(a.start + i as i64 - start) as usize] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            coeffs[(b.start + i as i64 - start) as usize] += c;
        }
        Self::from_parts(a.den, start, coeffs, prec)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = -c.clone();
        }
        s
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::from_parts(self.den, self.start, Vec::new(), self.prec);
        }
        let mut s = self.clone();
        for x in &mut s.coeffs {
            *x *= c;
        }
        s
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        let d = self.den.lcm(&e.denom().to_i64().unwrap());
        let mut s = self.with_den(d);
        let k = (e * int(d)).to_integer().to_i64().unwrap();
        s.start += k;
        s.prec = s.prec.map(|p| p + k);
        s.normalized()
    }

    /// Product, exact up to the smaller of the two induced truncation orders.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        let va = if a.coeffs.is_empty() { a.prec.unwrap_or(0) } else { a.start };
        let vb = if b.coeffs.is_empty() { b.prec.unwrap_or(0) } else { b.start };
        let prec = match (a.prec, b.prec) {
            (Some(pa), Some(pb)) => Some((pa + vb).min(pb + va)),
            (Some(pa), None) => Some(pa + vb),
            (None, Some(pb)) => Some(pb + va),
            (None, None) => None,
        };
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Self::from_parts(a.den, prec.unwrap_or(0), Vec::new(), prec);
        }
        let start = a.start + b.start;
        let mut len = a.coeffs.len() + b.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - start).max(0) as usize);
        }
        let mut coeffs = vec![Rational::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() || i >= len {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        Self::from_parts(a.den, start, coeffs, prec)
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient and a
    /// finite truncation order (the result of inverting an exact series with
    /// more than one term is infinite, so `order` bounds it).
    pub fn inverse(&self, order: Option<&Rational>) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroElement);
        }
        let v = self.start;
        let mut den = self.den;
        if let Some(o) = order {
            den = den.lcm(&o.denom().to_i64().unwrap());
        }
        let s = self.with_den(den);
        let v = v * (den / self.den);
        // Relative precision: number of known coefficients after the leading one.
        let rel = match (s.prec, order) {
            (Some(p), Some(o)) => (p - v).min((o * int(den)).to_integer().to_i64().unwrap() + v),
            (Some(p), None) => p - v,
            (None, Some(o)) => (o * int(den)).to_integer().to_i64().unwrap() + v,
            (None, None) => {
                if s.coeffs.len() == 1 {
                    let c = Rational::one() / &s.coeffs[0];
                    return Ok(QSeries { den, start: -v, coeffs: vec![c], prec: None }.normalized());
                }
                return Err(Error::InvalidInput("inverse of an exact non-monomial series needs an order".into()));
            }
        };
        let rel = rel.max(0) as usize;
        let a0_inv = Rational::one() / &s.coeffs[0];
        let mut inv: Vec<Rational> = Vec::with_capacity(rel);
        for n in 0..rel {
            if n == 0 {
                inv.push(a0_inv.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for k in 1..=n.min(s.coeffs.len().saturating_sub(1)) {
                if !s.coeffs[k].is_zero() {
                    acc += &s.coeffs[k] * &inv[n - k];
                }
            }
            inv.push(-acc * &a0_inv);
        }
        Ok(Self::from_parts(den, -v, inv, Some(-v + rel as i64)))
    }

    /// Integer power (negative powers use [`QSeries::inverse`] with the given order).
    pub fn pow(&self, e: i64, order: Option<&Rational>) -> Result<Self> {
        let base = if e < 0 { self.inverse(order)? } else { self.clone() };
        let mut result = QSeries::monomial(&Rational::zero(), Rational::one());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b);
                if let Some(o) = order {
                    result = result.truncate(o);
                }
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
                if let Some(o) = order {
                    b = b.truncate(o);
                }
            }
        }
        Ok(result)
    }

    /// `(q d/dq)^s` applied termwise: the coefficient at `q^e` is multiplied by `e^s`.
    pub fn theta_derivative(&self, s: u32) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let e = Rational::new(BigInt::from(self.start + i as i64), BigInt::from(self.den));
            *c *= num_traits::pow(e, s as usize);
        }
        out.normalized()
    }

    /// Substitution `q → q^k` (i.e. `τ → kτ`) for a positive rational `k`.
    pub fn rescale_exponents(&self, k: &Rational) -> Self {
        assert!(k.is_positive());
        // exponent n/den ↦ n·k/den = n·kn / (den·kd)
        let kn = k.numer().to_i64().unwrap();
        let kd = k.denom().to_i64().unwrap();
        let den = self.den * kd;
        let mut coeffs = vec![Rational::zero(); if self.coeffs.is_empty() { 0 } else { (self.coeffs.len() - 1) * kn as usize + 1 }];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * kn as usize] = c.clone();
        }
        Self::from_parts(den, self.start * kn, coeffs, self.prec.map(|p| p * kn))
    }

    /// Keeps only the terms whose exponent satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&Rational) -> bool) -> Self {
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            let e = Rational::new(BigInt::from(self.start + i as i64), BigInt::from(self.den));
            if !pred(&e) {
                *c = Rational::zero();
            }
        }
        s.normalized()
    }

    /// Maps every coefficient through `f` (exponents unchanged).
    pub fn map_coeffs(&self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let mut s = self.clone();
        for (i, c) in s.coeffs.iter_mut().enumerate() {
            let e = Rational::new(BigInt::from(self.start + i as i64), BigInt::from(self.den));
            *c = f(&e, c);
        }
        s.normalized()
    }

    /// Equality of all coefficients below `order` (both series must be known there).
    pub fn agrees_below(&self, other: &Self, order: &Rational) -> bool {
        let check = |s: &Self| s.order().is_none_or(|o| o >= *order);
        if !check(self) || !check(other) {
            return false;
        }
        self.truncate(order) == other.truncate(order)
    }

    /// Principal part (terms with negative exponent).
    pub fn principal_part(&self) -> Vec<(Rational, Rational)> {
        self.terms().filter(|(e, _)| e.is_negative()).map(|(e, c)| (e, c.clone())).collect()
    }

    /// Least common denominator of all known coefficients.
    pub fn coefficient_denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if e.is_zero() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order() {
            write!(f, " + O(q^({o}))")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat;
    use super::*;

    #[test]
    fn telescoping_product() {
        let a = QSeries::from_int_coeffs(0, &[1, 1], Some(10));
        let b = QSeries::from_int_coeffs(0, &[1, -1], Some(10));
        let p = a.mul(&b);
        assert_eq!(p, QSeries::from_int_coeffs(0, &[1, 0, -1], Some(10)));
        assert_eq!(p.order(), Some(int(10)));
    }

    #[test]
    fn exponent_addition() {
        let a = QSeries::monomial(&int(-1), int(1));
        let b = QSeries::monomial(&int(1), int(1));
        assert_eq!(a.mul(&b), QSeries::monomial(&int(0), int(1)));
    }

    #[test]
    fn rational_exponents_align() {
        let a = QSeries::monomial(&rat(1, 4), int(2));
        let b = QSeries::monomial(&rat(1, 6), int(3));
        let p = a.mul(&b);
        assert_eq!(p.coeff(&rat(5, 12)), Some(int(6)));
        assert_eq!(p.den(), 12);
    }

    #[test]
    fn inverse_of_geometric() {
        let a = QSeries::from_int_coeffs(0, &[1, -1], Some(20));
        let inv = a.inverse(None).unwrap();
        for n in 0..20 {
            assert_eq!(inv.coeff(&int(n)), Some(int(1)));
        }
        assert_eq!(inv.coeff(&int(20)), None);
    }

    #[test]
    fn truncation_propagates() {
        let a = QSeries::from_int_coeffs(-1, &[1, 5], Some(5));
        let b = QSeries::from_int_coeffs(0, &[1, 2, 3], Some(8));
        // a known to 5 with valuation -1; b known to 8 with valuation 0
        assert_eq!(a.mul(&b).order(), Some(int(5).min(int(7))));
    }
}
