//! Binary quadratic forms: reduction, class representatives, stabilizers,
//! genus characters, (twisted) Heegner divisors and the exponent-two survey.

pub mod divisor;
pub mod genus;

pub use divisor::{heegner_divisor, twisted_divisor, CMPoint, HeegnerDivisor};
pub use genus::{genus_character, genus_character_local, genus_character_vector, hilbert_symbol};

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::rational::is_fundamental_discriminant;
use crate::error::{Error, Result};

/// Integral binary quadratic form `[a, b, c] = a x² + b x y + c y²`.
///
/// The type itself admits any coefficients (genus characters are evaluated on
/// indefinite and negative definite forms too); operations that need a
/// positive definite form check it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct BQF {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BQF {
    /// The form `[a, b, c]`.
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BQF { a, b, c }
    }

    /// Discriminant `b² − 4ac`.
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `true` for `a > 0` and negative discriminant.
    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.disc() < 0
    }

    /// Content `gcd(a, b, c)`.
    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The form `f(αx + βy, γx + δy)` for `g = [[α, β], [γ, δ]]`.
    pub fn transform(&self, g: [[i64; 2]; 2]) -> Self {
        let [[al, be], [ga, de]] = g;
        BQF { a: self.eval(al, ga), b: 2 * self.a * al * be + self.b * (al * de + be * ga) + 2 * self.c * ga * de, c: self.eval(be, de) }
    }

    /// `true` if the form satisfies `|b| ≤ a ≤ c` with `b ≥ 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a && self.a <= self.c && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    /// `true` if the class of the form has order at most two (ambiguous reduced form).
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.a == self.b || self.a == self.c
    }
}

impl std::fmt::Display for BQF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// Reduced representative of a positive definite form together with
/// `g ∈ SL₂(ℤ)` such that `f.transform(g)` is the reduced form.
pub fn reduce_with_transform(f: &BQF) -> Result<(BQF, [[i64; 2]; 2])> {
    if !f.is_positive_definite() {
        return Err(Error::InvalidInput(format!("{f} is not positive definite")));
    }
    let mut g = [[1i64, 0], [0, 1]];
    let mut h = *f;
    let compose = |g: [[i64; 2]; 2], m: [[i64; 2]; 2]| {
        [
            [g[0][0] * m[0][0] + g[0][1] * m[1][0], g[0][0] * m[0][1] + g[0][1] * m[1][1]],
            [g[1][0] * m[0][0] + g[1][1] * m[1][0], g[1][0] * m[0][1] + g[1][1] * m[1][1]],
        ]
    };
    loop {
        // translate b into (−a, a]
        let k = Integer::div_floor(&(h.a - h.b), &(2 * h.a));
        if k != 0 {
            let t = [[1, k], [0, 1]];
            h = h.transform(t);
            g = compose(g, t);
        }
        if h.a > h.c {
            let s = [[0, -1], [1, 0]];
            h = h.transform(s);
            g = compose(g, s);
            continue;
        }
        if h.a == h.c && h.b < 0 {
            let s = [[0, -1], [1, 0]];
            h = h.transform(s);
            g = compose(g, s);
        }
        return Ok((h, g));
    }
}

/// Reduced representative of a positive definite form.
pub fn reduce_form(f: &BQF) -> Result<BQF> {
    reduce_with_transform(f).map(|(h, _)| h)
}

fn check_disc(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidInput(format!("{d} is not a negative discriminant")));
    }
    Ok(())
}

/// All reduced positive definite forms of discriminant `d`, primitive or not.
pub fn reduced_forms(d: i64) -> Result<Vec<BQF>> {
    check_disc(d)?;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BQF::new(a, b, num / (4 * a));
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    Ok(out)
}

/// One reduced primitive form per `SL₂(ℤ)`-class of discriminant `d`.
pub fn class_representatives(d: i64) -> Result<Vec<BQF>> {
    Ok(reduced_forms(d)?.into_iter().filter(|f| f.content() == 1).collect())
}

/// Class number `h(d)`.
pub fn class_number(d: i64) -> Result<usize> {
    class_representatives(d).map(|v| v.len())
}

/// Order of the stabilizer of the form in `SL₂(ℤ)`: 4 for the class of `i`, 6 for that of `e^{πi/3}`, else 2.
pub fn stabilizer_order(f: &BQF) -> Result<u32> {
    let h = reduce_form(f)?;
    Ok(if h.b == 0 && h.a == h.c {
        4
    } else if h.a == h.b && h.b == h.c {
        6
    } else {
        2
    })
}

/// Survey of fundamental discriminants `−bound < D < 0`: returns the number of such `D` and
/// the number whose class group is trivial or of exponent two.
pub fn exponent2_survey(bound: u64) -> (usize, usize) {
    let ds: Vec<i64> = (3..bound as i64).map(|n| -n).filter(|&d| is_fundamental_discriminant(d)).collect();
    let good = ds.par_iter().filter(|&&d| class_representatives(d).map(|v| v.iter().all(BQF::is_ambiguous)).unwrap_or(false)).count();
    (ds.len(), good)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_form(&BQF::new(1, 1, 6)).unwrap(), BQF::new(1, 1, 6));
        assert_eq!(reduce_form(&BQF::new(2, 2, 3)).unwrap(), BQF::new(2, 2, 3));
        assert_eq!(reduce_form(&BQF::new(6, 1, 1)).unwrap(), BQF::new(1, 1, 6));
        assert!(reduce_form(&BQF::new(1, 3, 1)).is_err());
        let (h, g) = reduce_with_transform(&BQF::new(13, 23, 11)).unwrap();
        assert_eq!(BQF::new(13, 23, 11).transform(g), h);
        assert_eq!(g[0][0] * g[1][1] - g[0][1] * g[1][0], 1);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_representatives(-23).unwrap(), vec![BQF::new(1, 1, 6), BQF::new(2, -1, 3), BQF::new(2, 1, 3)]);
        assert_eq!(class_representatives(-4).unwrap(), vec![BQF::new(1, 0, 1)]);
        assert_eq!(class_number(-63).unwrap(), 4);
        assert!(class_representatives(-5).is_err());
    }

    #[test]
    fn stabilizers() {
        assert_eq!(stabilizer_order(&BQF::new(1, 0, 1)).unwrap(), 4);
        assert_eq!(stabilizer_order(&BQF::new(1, 1, 1)).unwrap(), 6);
        assert_eq!(stabilizer_order(&BQF::new(1, 1, 6)).unwrap(), 2);
    }

    #[test]
    fn survey_small_bounds() {
        assert_eq!(exponent2_survey(4), (1, 1));
        assert_eq!(exponent2_survey(5), (2, 2));
    }
}
