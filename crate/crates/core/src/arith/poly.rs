//! Dense univariate polynomials with rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigreal::BigComplex;
use super::rational::Rational;

/// Polynomial `Σ c_i x^i` with coefficients stored from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly(pub Vec<Rational>);

impl QPoly {
    /// Builds a polynomial and strips trailing zeros.
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    /// From integer coefficients (constant term first).
    pub fn from_ints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    /// The constant `c`.
    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        QPoly(vec![Rational::zero(), Rational::one()])
    }

    /// `true` for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut c = vec![Rational::zero(); n];
        for (i, x) in self.0.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.0.iter().enumerate() {
            c[i] += x;
        }
        Self::new(c)
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.0.iter().map(|x| x * s).collect())
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Self::new(c)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.0.len() - 1;
        let lead_inv = Rational::one() / d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::zero(), Self::new(r));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, y) in d.0.iter().enumerate() {
                    r[k + i] -= &c * y;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Remainder modulo `d`.
    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(Rational::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Evaluation at a rational point.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation at a complex point (Horner, at the point's precision).
    pub fn eval_complex(&self, z: &BigComplex) -> BigComplex {
        let p = z.prec();
        let mut acc = BigComplex::zero(p);
        for c in self.0.iter().rev() {
            acc = acc.mul(z).add(&BigComplex::from_rational(c, p));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect())
    }

    /// Evaluation at an `f64` complex point.
    pub fn eval_f64(&self, re: f64, im: f64) -> (f64, f64) {
        let (mut ar, mut ai) = (0.0, 0.0);
        for c in self.0.iter().rev() {
            let cr = super::rational::to_f64(c);
            let nr = ar * re - ai * im + cr;
            let ni = ar * im + ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    }

    /// `true` if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Human-readable rendering in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let a = c.abs();
            let coef = if mono.is_empty() || !a.is_one() { format!("{a}") } else { String::new() };
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef}*{mono}"),
            };
            parts.push((c.is_negative(), body));
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn inverse_mod_cubic() {
        // x^3 - x - 1; inverse of x is x^2 - 1
        let p = QPoly::new(vec![int(-1), int(-1), int(0), int(1)]);
        let (g, s, _) = QPoly::x().ext_gcd(&p);
        assert_eq!(g, QPoly::constant(int(1)));
        assert_eq!(s.rem(&p), QPoly::new(vec![int(-1), int(0), int(1)]));
    }

    #[test]
    fn divrem_identity() {
        let a = QPoly::new(vec![rat(1, 2), int(3), int(0), int(-2), int(5)]);
        let d = QPoly::new(vec![int(1), int(1), int(2)]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
