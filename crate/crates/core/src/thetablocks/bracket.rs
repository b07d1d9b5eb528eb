//! Rankin–Cohen brackets on q-expansions.
//!
//! Derivatives are normalised as `f^{(s)} = (q d/dq)^s f`, which is
//! `(2πi)^{−s} ∂^s f/∂τ^s` on q-expansions, so brackets of series with rational
//! coefficients stay rational.

use crate::arith::qseries::QSeries;
use crate::arith::rational::{binomial, int, Rational};

/// `[f, g]_n = Σ_s (−1)^s C(k+n−1, s) C(l+n−1, n−s) f^{(n−s)} g^{(s)}` for `f` of weight `k`
/// and `g` of weight `l`.
pub fn rankin_cohen(f: &QSeries, k: &Rational, g: &QSeries, l: &Rational, n: u32) -> QSeries {
    let mut acc: Option<QSeries> = None;
    for s in 0..=n {
        let c = rc_weight(k, l, n, s);
        let term = f.theta_derivative(n - s).mul(&g.theta_derivative(s)).scale(&c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.expect("at least one summand")
}

/// The scalar `(−1)^s C(k+n−1, s) C(l+n−1, n−s)` multiplying `f^{(n−s)} g^{(s)}`.
pub fn rc_weight(k: &Rational, l: &Rational, n: u32, s: u32) -> Rational {
    let one = int(1);
    let sign = if s % 2 == 0 { int(1) } else { int(-1) };
    sign * binomial(&(k + int(n as i64) - &one), s) * binomial(&(l + int(n as i64) - &one), n - s)
}

/// Coefficient of `q^{a+b}` in `[q^a, q^b]_n`:
/// `Σ_s (−1)^s C(k+n−1, s) C(l+n−1, n−s) a^{n−s} b^s`.
pub fn rc_monomial(k: &Rational, l: &Rational, n: u32, a: &Rational, b: &Rational) -> Rational {
    (0..=n).map(|s| rc_weight(k, l, n, s) * num_traits::pow(a.clone(), (n - s) as usize) * num_traits::pow(b.clone(), s as usize)).sum()
}
