//! The Gauss hypergeometric series `F(a, b; c; z)` for real parameters and `0 ≤ z < 1`,
//! summed with an explicit tail bound.

use rug::Float;

use crate::arith::bigreal::BigReal;
use crate::error::{Error, Result};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 2_000_000;

/// `F(a, b; c; z) = Σ (a)_n (b)_n / ((c)_n n!) zⁿ` to `prec` bits.
///
/// For nonnegative `a, b` and positive `c` all terms are nonnegative and the tail after
/// term `n` is bounded by `term_n · ρ/(1 − ρ)` with
/// `ρ = z · max(1, (a+n)/(c+n)) · max(1, (b+n)/(1+n))`, which dominates every later
/// term ratio because `(a+k)/(c+k)` and `(b+k)/(1+k)` are monotone in `k`.  Summation
/// stops once that bound is below `2^{−prec}` of the partial sum.  Other parameter signs
/// fall back to stopping on a small monotonically decreasing term, which is not certified.
pub fn gauss_2f1(a: &BigReal, b: &BigReal, c: &BigReal, z: &BigReal, prec: u32) -> Result<BigReal> {
    if c.0 <= 0 && c.0.is_integer() {
        return Err(Error::InvalidInput("c must not be a non-positive integer".into()));
    }
    if z.0 < 0 || z.0 >= 1 {
        return Err(Error::InvalidInput(format!("z = {} outside [0, 1)", z.to_f64())));
    }
    let work = prec + 32;
    let a = Float::with_val(work, &a.0);
    let b = Float::with_val(work, &b.0);
    let c = Float::with_val(work, &c.0);
    let z = Float::with_val(work, &z.0);
    let positive = a >= 0 && b >= 0 && c > 0;
    let mut term = Float::with_val(work, 1);
    let mut sum = Float::with_val(work, 1);
    let eps = Float::with_val(work, Float::i_exp(1, -(prec as i32)));
    if z == 0 {
        return Ok(BigReal(Float::with_val(prec, 1)));
    }
    for n in 0..MAX_TERMS {
        let nf = Float::with_val(work, n);
        let an = Float::with_val(work, &a + &nf);
        let bn = Float::with_val(work, &b + &nf);
        let cn = Float::with_val(work, &c + &nf);
        let n1 = Float::with_val(work, &nf + 1u32);
        if positive {
            let r1 = Float::with_val(work, &an / &cn).max(&Float::with_val(work, 1));
            let r2 = Float::with_val(work, &bn / &n1).max(&Float::with_val(work, 1));
            let rho = Float::with_val(work, &z * &r1) * r2;
            if rho < 1 {
                let one_minus = Float::with_val(work, 1 - &rho);
                let tail = Float::with_val(work, &term * &rho) / one_minus;
                if tail <= Float::with_val(work, &sum.clone().abs() * &eps) {
                    return Ok(BigReal(Float::with_val(prec, &sum + Float::with_val(work, &tail / 2u32))));
                }
            }
        }
        term *= Float::with_val(work, &an * &bn) / Float::with_val(work, &cn * &n1);
        term *= &z;
        sum += &term;
        if !positive && term.clone().abs() <= Float::with_val(work, &sum.clone().abs() * &eps) && n > 8 {
            return Ok(BigReal(Float::with_val(prec, sum)));
        }
    }
    Err(Error::Tolerance(format!("F(a,b;c;z) at z = {} needs more than {MAX_TERMS} terms for {prec} bits", z.to_f64())))
}

/// `F(a, b; c; z)` in double precision (no certification; used by the lattice sums).
pub fn gauss_2f1_f64(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && n > 2 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(x: f64) -> BigReal {
        BigReal::from_f64(x, 200)
    }

    #[test]
    fn log_series() {
        let v = gauss_2f1(&br(1.0), &br(1.0), &br(2.0), &br(0.5), 150).unwrap();
        let want = Float::with_val(150, 2u32).ln() * 2u32;
        assert!(Float::with_val(150, &v.0 - &want).abs() < Float::with_val(150, Float::i_exp(1, -140)));
        assert!((gauss_2f1_f64(1.0, 1.0, 2.0, 0.5) - 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn value_at_zero_is_one() {
        assert_eq!(gauss_2f1(&br(3.0), &br(0.5), &br(1.5), &br(0.0), 64).unwrap().to_f64(), 1.0);
    }

    #[test]
    fn invalid_arguments() {
        assert!(gauss_2f1(&br(1.0), &br(1.0), &br(-2.0), &br(0.5), 64).is_err());
        assert!(gauss_2f1(&br(1.0), &br(1.0), &br(2.0), &br(1.0), 64).is_err());
    }
}
