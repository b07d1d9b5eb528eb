//! Number fields `ℚ[x]/(p)` with a pinned complex embedding.
//!
//! A [`NumberField`] is given by a monic integral minimal polynomial and a disc
//! (centre and radius) containing exactly one of its complex roots; that root
//! is the embedding.  Irreducibility is verified at construction by trial
//! factorisation: every monic factor of degree `d ≤ deg/2` has as roots some
//! `d`-subset of the roots of `p`, so all such subsets are tested numerically
//! and every near-integral candidate is confirmed or refuted by exact division.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::Float;

use super::bigreal::{BigComplex, BigReal};
use super::poly::QPoly;
use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

/// Disc in the complex plane used to pin one root of the minimal polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingBox {
    /// Real part of the centre.
    pub re: Rational,
    /// Imaginary part of the centre.
    pub im: Rational,
    /// Radius of the disc.
    pub radius: Rational,
}

/// Number field with a pinned complex embedding.
#[derive(Clone, Debug)]
pub struct NumberField {
    minpoly: Vec<BigInt>,
    poly: QPoly,
    embedding: EmbeddingBox,
    /// The pinned root at the baseline precision of 128 bits.
    root128: BigComplex,
    /// All roots as `f64` pairs (used for re-pinning and diagnostics).
    roots_f64: Vec<(f64, f64)>,
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly && self.embedding == o.embedding
    }
}

/// Baseline precision (bits) at which embeddings are refined when a field is built.
pub const BASELINE_PREC: u32 = 128;

/// All complex roots of a squarefree polynomial via Aberth–Ehrlich iteration in `f64`.
fn all_roots_f64(p: &QPoly) -> Vec<(f64, f64)> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lead = to_f64(&p.lead());
    let c: Vec<f64> = p.0.iter().map(|x| to_f64(x) / lead).collect();
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            (0.5 * bound * t.cos(), 0.5 * bound * t.sin())
        })
        .collect();
    let eval = |x: (f64, f64)| -> ((f64, f64), (f64, f64)) {
        let (mut pr, mut pi) = (0.0, 0.0);
        let (mut dr, mut di) = (0.0, 0.0);
        for a in c.iter().rev() {
            let ndr = dr * x.0 - di * x.1 + pr;
            let ndi = dr * x.1 + di * x.0 + pi;
            dr = ndr;
            di = ndi;
            let npr = pr * x.0 - pi * x.1 + a;
            let npi = pr * x.1 + pi * x.0;
            pr = npr;
            pi = npi;
        }
        ((pr, pi), (dr, di))
    };
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let (pv, dv) = eval(z[i]);
            let ratio = cdiv(pv, dv);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    let inv = cdiv((1.0, 0.0), d);
                    s.0 += inv.0;
                    s.1 += inv.1;
                }
            }
            let rs = (ratio.0 * s.0 - ratio.1 * s.1, ratio.0 * s.1 + ratio.1 * s.0);
            let w = cdiv(ratio, (1.0 - rs.0, -rs.1));
            z[i].0 -= w.0;
            z[i].1 -= w.1;
            maxstep = maxstep.max((w.0 * w.0 + w.1 * w.1).sqrt());
        }
        if maxstep < 1e-15 * bound {
            break;
        }
    }
    z
}

/// Newton refinement of an approximate simple root to `prec` bits.
fn newton_refine(p: &QPoly, start: (f64, f64), prec: u32) -> BigComplex {
    let dp = p.derivative();
    let work = prec + 32;
    let mut z = BigComplex::from_f64(start.0, start.1, work);
    let tiny = Float::with_val(work, Float::i_exp(1, -(prec as i32) - 8));
    for _ in 0..200 {
        let step = p.eval_complex(&z).div(&dp.eval_complex(&z));
        z = z.sub(&step);
        let s = step.abs();
        if s <= tiny || s.is_zero() {
            break;
        }
    }
    z.with_prec(prec)
}

fn is_reducible(minpoly: &[BigInt], poly: &QPoly, roots: &[(f64, f64)]) -> bool {
    let n = roots.len();
    let mut subset: Vec<usize> = Vec::new();
    // Enumerate d-subsets for d = 1..=n/2.
    fn rec(start: usize, d: usize, n: usize, subset: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if subset.len() == d {
            return f(subset);
        }
        for i in start..n {
            subset.push(i);
            if rec(i + 1, d, n, subset, f) {
                return true;
            }
            subset.pop();
        }
        false
    }
    let _ = minpoly;
    for d in 1..=n / 2 {
        let mut test = |s: &[usize]| -> bool {
            // Expand Π (x - r_i) in f64 complex arithmetic.
            let mut c: Vec<(f64, f64)> = vec![(1.0, 0.0)];
            for &i in s {
                let r = roots[i];
                let mut nc = vec![(0.0, 0.0); c.len() + 1];
                for (k, a) in c.iter().enumerate() {
                    nc[k + 1].0 += a.0;
                    nc[k + 1].1 += a.1;
                    nc[k].0 -= a.0 * r.0 - a.1 * r.1;
                    nc[k].1 -= a.0 * r.1 + a.1 * r.0;
                }
                c = nc;
            }
            let near = c.iter().all(|a| a.1.abs() < 1e-6 && (a.0 - a.0.round()).abs() < 1e-6);
            if !near {
                return false;
            }
            let cand = QPoly::new(c.iter().map(|a| Rational::from_integer(BigInt::from(a.0.round() as i64))).collect());
            poly.rem(&cand).is_zero()
        };
        if rec(0, d, n, &mut subset, &mut test) {
            return true;
        }
    }
    false
}

impl NumberField {
    /// Builds the field `ℚ[x]/(p)` for a monic integral `p` (constant term first)
    /// with the embedding given by the unique root inside `embedding`.
    pub fn new(minpoly: Vec<BigInt>, embedding: EmbeddingBox) -> Result<Arc<Self>> {
        if minpoly.len() < 2 {
            return Err(Error::Data("minimal polynomial must have degree at least 1".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::Data("minimal polynomial must be monic".into()));
        }
        if !embedding.radius.is_positive() {
            return Err(Error::Data("embedding radius must be positive".into()));
        }
        let poly = QPoly::from_ints(&minpoly);
        let roots = all_roots_f64(&poly);
        if poly.degree().unwrap() > 16 {
            return Err(Error::Data("degree above 16 is not supported by the trial factorisation".into()));
        }
        if is_reducible(&minpoly, &poly, &roots) {
            return Err(Error::Data(format!("minimal polynomial {} is reducible", poly.render("x"))));
        }
        let (cr, ci, rad) = (to_f64(&embedding.re), to_f64(&embedding.im), to_f64(&embedding.radius));
        let dist = |r: &(f64, f64)| ((r.0 - cr).powi(2) + (r.1 - ci).powi(2)).sqrt();
        let inside: Vec<&(f64, f64)> = roots.iter().filter(|r| dist(r) <= rad).collect();
        if inside.len() != 1 {
            return Err(Error::Data(format!(
                "embedding disc centre ({cr}, {ci}) radius {rad} contains {} roots, expected exactly one",
                inside.len()
            )));
        }
        if roots.iter().any(|r| (dist(r) - rad).abs() < 1e-3 * rad) {
            return Err(Error::Data("a root lies on the boundary of the embedding disc".into()));
        }
        let root128 = newton_refine(&poly, *inside[0], BASELINE_PREC);
        Ok(Arc::new(NumberField { minpoly, poly, embedding, root128, roots_f64: roots }))
    }

    /// Convenience constructor from `i64` coefficients and an `f64`-specified disc.
    pub fn from_i64(minpoly: &[i64], re: f64, im: f64, radius: f64) -> Result<Arc<Self>> {
        let to_r = |x: f64| super::rational::parse_rational(&format!("{x:.15}")).unwrap();
        Self::new(minpoly.iter().map(|&c| BigInt::from(c)).collect(), EmbeddingBox { re: to_r(re), im: to_r(im), radius: to_r(radius) })
    }

    /// Degree over ℚ.
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Minimal polynomial coefficients (constant term first).
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Minimal polynomial as a [`QPoly`].
    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    /// The embedding disc.
    pub fn embedding(&self) -> &EmbeddingBox {
        &self.embedding
    }

    /// All roots of the minimal polynomial as `f64` pairs.
    pub fn roots_f64(&self) -> &[(f64, f64)] {
        &self.roots_f64
    }

    /// The pinned root to `prec` bits (Newton refinement from the isolated start).
    pub fn root(&self, prec: u32) -> BigComplex {
        if prec <= BASELINE_PREC {
            return self.root128.with_prec(prec);
        }
        let (re, im) = self.root128.to_f64();
        newton_refine(&self.poly, (re, im), prec)
    }

    /// Real part of the pinned root; errors if the root is not real.
    pub fn real_root(&self, prec: u32) -> Result<BigReal> {
        let r = self.root(prec);
        if !r.im.is_zero() && r.im.to_f64().abs() > 1e-30 {
            return Err(Error::InvalidInput("embedding is not real".into()));
        }
        Ok(BigReal(r.re))
    }

    /// The same field with the embedding moved to the root nearest `(re, im)`.
    pub fn repinned(&self, re: f64, im: f64) -> Result<Arc<Self>> {
        let mut best = (f64::INFINITY, 0usize);
        for (i, r) in self.roots_f64.iter().enumerate() {
            let d = ((r.0 - re).powi(2) + (r.1 - im).powi(2)).sqrt();
            if d < best.0 {
                best = (d, i);
            }
        }
        let r = self.roots_f64[best.1];
        // radius: half the distance to the nearest other root
        let sep = self
            .roots_f64
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != best.1)
            .map(|(_, s)| ((s.0 - r.0).powi(2) + (s.1 - r.1).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        let radius = if sep.is_finite() { sep / 2.0 } else { 1.0 };
        Self::from_i64(&self.minpoly.iter().map(|c| c.to_i64().expect("small coefficients")).collect::<Vec<_>>(), r.0, r.1, radius)
    }
}

/// Element of a number field, stored as its reduced coordinate vector in the power basis.
#[derive(Clone, Debug)]
pub struct NFElem {
    field: Arc<NumberField>,
    poly: QPoly,
}

impl PartialEq for NFElem {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly && *self.field == *o.field
    }
}

impl NFElem {
    /// Element with power-basis coordinates `coords` (reduced modulo the minimal polynomial).
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Self {
        let poly = QPoly::new(coords).rem(field.poly());
        NFElem { field: field.clone(), poly }
    }

    /// The generator `x mod p`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![Rational::zero(), Rational::one()])
    }

    /// The rational `r` as a field element.
    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        Self::new(field, vec![r])
    }

    /// Parent field.
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coordinates in the power basis, padded to the field degree.
    pub fn coords(&self) -> Vec<Rational> {
        let mut c = self.poly.0.clone();
        c.resize(self.field.degree(), Rational::zero());
        c
    }

    /// `true` for the zero element.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if *self.field != *o.field {
            return Err(Error::Incompatible("elements of different number fields".into()));
        }
        Ok(())
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(NFElem { field: self.field.clone(), poly: self.poly.add(&o.poly) })
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(NFElem { field: self.field.clone(), poly: self.poly.sub(&o.poly) })
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(NFElem { field: self.field.clone(), poly: self.poly.mul(&o.poly).rem(self.field.poly()) })
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (g, s, _) = self.poly.ext_gcd(self.field.poly());
        debug_assert_eq!(g.degree(), Some(0));
        Ok(NFElem { field: self.field.clone(), poly: s.rem(self.field.poly()) })
    }

    /// Integer power (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::from_rational(&self.field, Rational::one());
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Image under the field endomorphism sending the generator to `image`.
    pub fn substitute(&self, image: &QPoly) -> Self {
        NFElem { field: self.field.clone(), poly: self.poly.compose(image).rem(self.field.poly()) }
    }

    /// Same coordinates regarded in another (isomorphic) field, e.g. after re-pinning.
    pub fn in_field(&self, field: &Arc<NumberField>) -> Self {
        NFElem::new(field, self.poly.0.clone())
    }

    /// Value under the pinned embedding at `prec` bits.
    pub fn embed(&self, prec: u32) -> BigComplex {
        self.poly.eval_complex(&self.field.root(prec + 16)).with_prec(prec)
    }

    /// `log |σ(e)|` for the pinned embedding `σ`, at `prec` bits.
    pub fn log_abs(&self, prec: u32) -> Result<BigReal> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        // Extra working bits guard against cancellation in Horner evaluation.
        let work = prec + 64;
        let v = self.poly.eval_complex(&self.field.root(work));
        Ok(BigReal(Float::with_val(prec, v.ln_abs())))
    }

    /// Coordinates rendered as a polynomial in `var`.
    pub fn render(&self, var: &str) -> String {
        self.poly.render(var)
    }
}

/// `log|e|` at `prec` bits (free-function form of [`NFElem::log_abs`]).
pub fn nf_log_abs(e: &NFElem, prec: u32) -> Result<BigReal> {
    e.log_abs(prec)
}

/// The pinned root at `prec` bits (free-function form of [`NumberField::root`]).
pub fn real_root_refine(field: &NumberField, prec: u32) -> BigComplex {
    field.root(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn cubic() -> Arc<NumberField> {
        NumberField::from_i64(&[-1, -1, 0, 1], 1.3247, 0.0, 0.1).unwrap()
    }

    #[test]
    fn plastic_number() {
        let k = cubic();
        let r = k.real_root(200).unwrap();
        assert!((r.to_f64() - 1.324717957244).abs() < 1e-12);
    }

    #[test]
    fn reducible_rejected() {
        // (x^2+1)(x^2-2)
        assert!(NumberField::from_i64(&[-2, 0, -1, 0, 1], 0.0, 1.0, 0.1).is_err());
        // x^2 - 4
        assert!(NumberField::from_i64(&[-4, 0, 1], 2.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn disc_must_isolate() {
        assert!(NumberField::from_i64(&[-1, -1, 0, 1], 0.0, 0.0, 10.0).is_err());
        assert!(NumberField::from_i64(&[-1, -1, 0, 1], 5.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn log_of_unit_power() {
        let k = cubic();
        let a = NFElem::generator(&k);
        let e = a.pow(-2).unwrap();
        let l = e.log_abs(128).unwrap();
        assert_eq!(&(-l).to_fixed(12), "0.562399148646");
        assert!(NFElem::from_rational(&k, int(0)).log_abs(64).is_err());
    }

    #[test]
    fn linear_field() {
        let k = NumberField::from_i64(&[-2, 1], 2.0, 0.0, 0.5).unwrap();
        let r = k.real_root(100).unwrap();
        assert_eq!(r.to_f64(), 2.0);
    }
}
