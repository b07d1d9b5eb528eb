//! The Shimura lift on Fourier coefficients,
//! `B(n) = Σ_{d|n} d^{2j} (D₀/d) b(m₀n²/d², μ₀n/d)`.

use crate::arith::rational::{divisors, int, kronecker, Rational};

/// Coefficients `B(1), …, B(nmax)`; an entry is `None` when a needed `b(m, μ)` is unknown.
///
/// `b(m, μ)` is the coefficient function of the half-integral weight form, with `μ`
/// an integer taken modulo `modulus` (the identification `L'/L ≅ ℤ/2M`).
pub fn shimura_lift(
    b: impl Fn(&Rational, i64) -> Option<Rational>,
    m0: &Rational,
    mu0: i64,
    d0: i64,
    j: u32,
    modulus: i64,
    nmax: u64,
) -> Vec<Option<Rational>> {
    (1..=nmax)
        .map(|n| {
            let mut acc = Rational::from_integer(0.into());
            for d in divisors(n) {
                let chi = kronecker(d0, d as i64);
                if chi == 0 {
                    continue;
                }
                let q = (n / d) as i64;
                let m = m0 * int(q * q);
                let mu = (mu0 * q).rem_euclid(modulus);
                let coeff = b(&m, mu)?;
                acc += coeff * int(chi as i64) * num_traits::pow(int(d as i64), 2 * j as usize);
            }
            Some(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn prime_index_formula() {
        let b = |m: &Rational, mu: i64| Some(m * int(7) + int(mu));
        let m0 = rat(3, 4);
        let out = shimura_lift(b, &m0, 1, -3, 1, 2, 5);
        assert_eq!(out[0], b(&m0, 1));
        // B(5) = b(25 m₀, 5μ₀) + 5²(−3/5) b(m₀, μ₀)
        let want = b(&(&m0 * int(25)), 1).unwrap() + int(25) * int(kronecker(-3, 5) as i64) * b(&m0, 1).unwrap();
        assert_eq!(out[4], Some(want));
    }
}
