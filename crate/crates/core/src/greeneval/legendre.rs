//! Legendre functions of the second kind `Q_{s−1}(t)`, `t > 1`.
//!
//! Three evaluation paths:
//! * the hypergeometric representation
//!   `Q_{s−1}(t) = Γ(s)²/(2Γ(2s)) · (2/(1+t))ˢ · F(s, s; 2s; 2/(1+t))`;
//! * for integer `s = n + 1` the closed form
//!   `Q_n(t) = P_n(t)·½log((t+1)/(t−1)) − Σ_{k=1}^n P_{k−1}(t)P_{n−k}(t)/k`;
//! * for the lattice sums, a double-precision evaluator ([`LegendreQ`]) using the series in
//!   `1/t²`, `Q_ν(t) = √π Γ(ν+1)/(Γ(ν+3/2)(2t)^{ν+1}) · F((ν+1)/2, (ν+2)/2; ν+3/2; 1/t²)`.

use rug::ops::Pow;
use rug::Float;

use super::hyper::{gauss_2f1, gauss_2f1_f64};
use crate::arith::bigreal::BigReal;
use crate::error::{Error, Result};

fn check_args(s: f64, t: &BigReal) -> Result<()> {
    if t.0 <= 1 {
        return Err(Error::InvalidInput(format!("Legendre Q needs t > 1, got {}", t.to_f64())));
    }
    if s <= 0.0 {
        return Err(Error::InvalidInput(format!("Legendre Q needs s > 0, got {s}")));
    }
    Ok(())
}

/// `Q_{s−1}(t)` through the hypergeometric representation.
pub fn legendre_q_hyper(s: &BigReal, t: &BigReal, prec: u32) -> Result<BigReal> {
    check_args(s.to_f64(), t)?;
    let work = prec + 32;
    let s = Float::with_val(work, &s.0);
    let t = Float::with_val(work, &t.0);
    let z = Float::with_val(work, 2u32) / Float::with_val(work, &t + 1u32);
    let two_s = Float::with_val(work, &s * 2u32);
    let f = gauss_2f1(&BigReal(s.clone()), &BigReal(s.clone()), &BigReal(two_s.clone()), &BigReal(z.clone()), work)?;
    let g = Float::with_val(work, s.gamma_ref());
    let pref = Float::with_val(work, &g * &g) / (Float::with_val(work, two_s.gamma_ref()) * 2u32);

    let zs = z.pow(&s);
    Ok(BigReal(Float::with_val(prec, pref * zs * &f.0)))
}

/// Legendre polynomials `P_0(t), …, P_n(t)` by the three-term recurrence.
fn legendre_p_table(n: usize, t: &Float) -> Vec<Float> {
    let prec = t.prec();
    let mut p = vec![Float::with_val(prec, 1)];
    if n >= 1 {
        p.push(t.clone());
    }
    for k in 1..n {
        // (k+1)P_{k+1} = (2k+1) t P_k − k P_{k−1}
        let a = Float::with_val(prec, t * &p[k]) * (2 * k + 1) as u32;
        let b = Float::with_val(prec, &p[k - 1] * k as u32);
        p.push((a - b) / (k + 1) as u32);
    }
    p
}

/// `Q_n(t)` for integer `n ≥ 0` through the closed form.
///
/// The two parts cancel to leading order `(2t)^{2n+1}`, so the working precision is
/// raised by that many bits.
pub fn legendre_q_closed(n: u32, t: &BigReal, prec: u32) -> Result<BigReal> {
    check_args(n as f64 + 1.0, t)?;
    let lt = t.to_f64().abs().max(1.0);
    let guard = ((2 * n + 2) as f64 * (2.0 * lt).log2()).ceil() as u32 + 32;
    let work = prec + guard;
    let t = Float::with_val(work, &t.0);
    let p = legendre_p_table(n as usize, &t);
    let ratio = Float::with_val(work, &t + 1u32) / Float::with_val(work, &t - 1u32);
    let mut v = Float::with_val(work, &p[n as usize] * ratio.ln()) / 2u32;
    for k in 1..=n as usize {
        let w = Float::with_val(work, &p[k - 1] * &p[n as usize - k]) / k as u32;
        v -= w;
    }
    Ok(BigReal(Float::with_val(prec, v)))
}

/// `Q_{s−1}(t)`: the closed form for integer `s`, otherwise the hypergeometric path.
pub fn legendre_q(s: &BigReal, t: &BigReal, prec: u32) -> Result<BigReal> {
    if s.0.is_integer() && s.0 >= 1 {
        let n = s.to_f64() as u32 - 1;
        legendre_q_closed(n, t, prec)
    } else {
        legendre_q_hyper(s, t, prec)
    }
}

/// Double-precision evaluator of `Q_{s−1}` for one fixed `s`, with the antiderivative
/// needed for the tails of lattice sums.
#[derive(Clone, Debug)]
pub struct LegendreQ {
    s: f64,
    nu: f64,
    integer: Option<usize>,
    /// `√π Γ(ν+1)/(Γ(ν+3/2) 2^{ν+1})`
    pref_large: f64,
    /// `Γ(s)²/(2Γ(2s))`
    pref_hyp: f64,
}

/// Below this `t` the series in `1/t²` converges too slowly.
const SERIES_THRESHOLD: f64 = 1.5;

impl LegendreQ {
    /// Prepares the evaluator for `s > 0`.
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::InvalidInput(format!("Legendre Q needs s > 0, got {s}")));
        }
        let nu = s - 1.0;
        let g = |x: f64| Float::with_val(128, x).gamma();
        let pi = Float::with_val(128, rug::float::Constant::Pi);
        let pref_large = (pi.sqrt() * g(nu + 1.0) / g(nu + 1.5) / Float::with_val(128, 2f64).pow(Float::with_val(128, nu + 1.0))).to_f64();
        let pref_hyp = (g(s) * g(s) / (g(2.0 * s) * 2u32)).to_f64();
        let integer = if s.fract() == 0.0 && s >= 1.0 { Some(s as usize - 1) } else { None };
        Ok(LegendreQ { s, nu, integer, pref_large, pref_hyp })
    }

    /// The parameter `s`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// `Q_{s−1}(t)` for `t > 1`.
    pub fn eval(&self, t: f64) -> f64 {
        if t >= SERIES_THRESHOLD {
            let x = 1.0 / (t * t);
            let nu = self.nu;
            self.pref_large * t.powf(-(nu + 1.0)) * gauss_2f1_f64((nu + 1.0) / 2.0, (nu + 2.0) / 2.0, nu + 1.5, x)
        } else if let Some(n) = self.integer {
            let mut p = vec![1.0, t];
            for k in 1..n {
                p.push(((2 * k + 1) as f64 * t * p[k] - k as f64 * p[k - 1]) / (k + 1) as f64);
            }
            let mut v = p[n] * 0.5 * ((t + 1.0) / (t - 1.0)).ln();
            for k in 1..=n {
                v -= p[k - 1] * p[n - k] / k as f64;
            }
            v
        } else {
            let z = 2.0 / (1.0 + t);
            self.pref_hyp * z.powf(self.s) * gauss_2f1_f64(self.s, self.s, 2.0 * self.s, z)
        }
    }

    /// `∫_X^∞ Q_{s−1}(t) dt` for `X ≥ 1.5` and `s > 1`, integrating the `1/t²` series termwise.
    pub fn tail_integral(&self, x: f64) -> f64 {
        assert!(x >= SERIES_THRESHOLD && self.s > 1.0, "tail integral needs X ≥ 1.5 and s > 1");
        let nu = self.nu;
        let (a, b, c) = ((nu + 1.0) / 2.0, (nu + 2.0) / 2.0, nu + 1.5);
        let y = 1.0 / (x * x);
        let mut coeff = 1.0;
        let mut pw = x.powf(-nu);
        let mut sum = 0.0;
        for k in 0..10_000 {
            let kf = k as f64;
            let term = coeff * pw / (nu + 2.0 * kf);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
            coeff *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
            pw *= y;
        }
        self.pref_large * sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(x: f64) -> BigReal {
        BigReal::from_f64(x, 256)
    }

    #[test]
    fn q1_at_three() {
        let want = 1.5 * 2f64.ln() - 1.0;
        let a = legendre_q_closed(1, &br(3.0), 128).unwrap().to_f64();
        let b = legendre_q_hyper(&br(2.0), &br(3.0), 128).unwrap().to_f64();
        assert!((a - want).abs() < 1e-16 && (b - want).abs() < 1e-16);
        assert!((LegendreQ::new(2.0).unwrap().eval(3.0) - want).abs() < 1e-16);
    }

    #[test]
    fn closed_and_hypergeometric_paths_agree() {
        for n in 1..=6u32 {
            for t in [1.01, 1.5, 3.0, 10.0, 100.0] {
                let a = legendre_q_closed(n, &br(t), 160).unwrap();
                let b = legendre_q_hyper(&br(n as f64 + 1.0), &br(t), 160).unwrap();
                let rel = (Float::with_val(160, &a.0 - &b.0) / &a.0).abs().to_f64();
                assert!(rel < 1e-20, "Q_{n}({t}): relative difference {rel:e}");
            }
        }
    }

    #[test]
    fn decay() {
        let q = legendre_q(&br(3.0), &br(1e6), 128).unwrap().to_f64();
        assert!(q > 0.0 && q < 1e-15);
    }

    #[test]
    fn integral_representation() {
        // Q_{s−1}(t) = ∫₀^∞ (t + √(t²−1) cosh u)^{−s} du; trapezoid rule on a decaying
        // analytic integrand converges geometrically.
        let (s, t) = (3.0f64, 2.0f64);
        let h = 1.0 / 64.0;
        let f = |u: f64| (t + (t * t - 1.0).sqrt() * u.cosh()).powf(-s);
        let mut sum = 0.5 * f(0.0);
        let mut k = 1;
        loop {
            let v = f(k as f64 * h);
            sum += v;
            if v < 1e-20 {
                break;
            }
            k += 1;
        }
        let quad = sum * h;
        let q = legendre_q_hyper(&br(s), &br(t), 128).unwrap().to_f64();
        assert!((quad - q).abs() < 1e-12, "{quad} vs {q}");
    }

    #[test]
    fn fast_evaluator_matches() {
        for s in [1.5, 2.0, 2.75, 3.0, 5.5, 7.0] {
            let q = LegendreQ::new(s).unwrap();
            for t in [1.01, 1.2, 1.49, 1.5, 2.0, 7.0, 1e3] {
                let exact = legendre_q(&br(s), &br(t), 128).unwrap().to_f64();
                let fast = q.eval(t);
                assert!(((fast - exact) / exact).abs() < 1e-10, "s={s} t={t}: {fast} vs {exact}");
            }
        }
    }

    #[test]
    fn tail_integral_matches_quadrature() {
        let q = LegendreQ::new(2.0).unwrap();
        // ∫_X^∞ Q₁ = closed form of the antiderivative: (t²−1)/2·½log((t+1)/(t−1)) − t/2 → 0.
        let x = 5.0f64;
        let anti = |t: f64| (t * t - 1.0) / 4.0 * ((t + 1.0) / (t - 1.0)).ln() - t / 2.0;
        assert!((q.tail_integral(x) + anti(x)).abs() < 1e-14);
    }
}
