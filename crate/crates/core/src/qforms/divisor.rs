//! CM points and (twisted) Heegner divisors on `SL₂(ℤ)\ℍ`.

use num_traits::{Signed, ToPrimitive};

use super::{genus::genus_character, reduced_forms, stabilizer_order, BQF};
use crate::arith::bigreal::BigReal;
use crate::arith::rational::{frac, int, rat, Rational};
use crate::error::{Error, Result};

/// CM point `z = (−b + i√|D|)/(2a)` of a positive definite form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CMPoint {
    form: BQF,
}

impl CMPoint {
    /// CM point of a positive definite form.
    pub fn new(form: BQF) -> Result<Self> {
        if !form.is_positive_definite() {
            return Err(Error::InvalidInput(format!("{form} is not positive definite")));
        }
        Ok(CMPoint { form })
    }

    /// Underlying form.
    pub fn form(&self) -> &BQF {
        &self.form
    }

    /// Discriminant of the form.
    pub fn disc(&self) -> i64 {
        self.form.disc()
    }

    /// `(Re z, Im z)` in double precision.
    pub fn to_f64(&self) -> (f64, f64) {
        let a2 = 2.0 * self.form.a as f64;
        (-(self.form.b as f64) / a2, ((-self.disc()) as f64).sqrt() / a2)
    }

    /// `(Re z, Im z)` at `prec` bits.
    pub fn to_big(&self, prec: u32) -> (BigReal, BigReal) {
        let x = BigReal::from_rational(&rat(-self.form.b, 2 * self.form.a), prec);
        let y = BigReal::from_i64(-self.disc(), prec).sqrt();
        let y = &BigReal::from_rational(&rat(1, 2 * self.form.a), prec) * &y;
        (x, y)
    }
}

/// Weighted formal sum of CM points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HeegnerDivisor {
    /// `(weight, point)` pairs with nonzero weights and inequivalent points.
    pub points: Vec<(Rational, CMPoint)>,
}

impl HeegnerDivisor {
    /// Sum of the absolute values of the weights.
    pub fn total_abs_weight(&self) -> Rational {
        self.points.iter().map(|(w, _)| w.abs()).sum()
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// `true` for the empty divisor.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The twisted divisor `Z_Δ(m)`: the sum over `SL₂(ℤ)`-classes of `λ = [a,b,c] ∈ L'`
/// with `Q(λ) = ac − b²/4 = |Δ|m`, `a > 0` and `λ ∈ rμ + L` of `(2/w_λ)·χ_Δ(λ)·z_λ`,
/// where `μ ∈ L'/L` is the class with `sgn(Δ)Q(μ) ≡ m (mod 1)`.
pub fn twisted_divisor(delta: i64, r: i64, m: &Rational) -> Result<HeegnerDivisor> {
    if (delta - r * r).rem_euclid(4) != 0 {
        return Err(Error::InvalidInput(format!("Δ = {delta} is not ≡ r² mod 4 for r = {r}")));
    }
    if !m.is_positive() {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let dd = -m * int(4 * delta.abs());
    if !dd.is_integer() {
        return Err(Error::InvalidInput(format!("−4|Δ|m = {dd} is not an integer")));
    }
    let d = dd.to_integer().to_i64().ok_or_else(|| Error::InvalidInput("discriminant too large".into()))?;
    // level one: L'/L = {0, μ₁} with Q(μ₁) = −1/4; λ lies in the class b mod 2.
    let fm = frac(m);
    let mu_b = if fm == Rational::from_integer(0.into()) {
        0
    } else if fm == frac(&rat(-delta.signum(), 4)) {
        1
    } else {
        return Err(Error::InvalidInput(format!("no μ with sgn(Δ)Q(μ) ≡ {m} mod 1")));
    };
    let want_b = (r * mu_b).rem_euclid(2);
    let mut points = Vec::new();
    for f in reduced_forms(d)? {
        if f.b.rem_euclid(2) != want_b {
            continue;
        }
        let chi = genus_character(delta, &f);
        if chi == 0 {
            continue;
        }
        let w = stabilizer_order(&f)? as i64;
        points.push((rat(2 * chi as i64, w), CMPoint::new(f)?));
    }
    Ok(HeegnerDivisor { points })
}

/// The Heegner divisor `C(d) = Z₁(|d|/4)`.
pub fn heegner_divisor(d: i64) -> Result<HeegnerDivisor> {
    twisted_divisor(1, 1, &rat(d.abs(), 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn untwisted_examples() {
        let z = twisted_divisor(1, 1, &int(1)).unwrap();
        assert_eq!(z.points, vec![(rat(1, 2), CMPoint::new(BQF::new(1, 0, 1)).unwrap())]);
        let c = heegner_divisor(-23).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.points.iter().all(|(w, _)| *w == int(1)));
    }

    #[test]
    fn twisted_example() {
        let z = twisted_divisor(-3, 1, &rat(1, 4)).unwrap();
        assert_eq!(z.points, vec![(rat(1, 3), CMPoint::new(BQF::new(1, 1, 1)).unwrap())]);
    }

    #[test]
    fn cm_point_coordinates() {
        let (x, y) = CMPoint::new(BQF::new(1, 1, 6)).unwrap().to_f64();
        assert!((x + 0.5).abs() < 1e-15 && (y - 23f64.sqrt() / 2.0).abs() < 1e-15);
    }
}
