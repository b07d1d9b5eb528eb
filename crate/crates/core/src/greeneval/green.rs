//! Hecke-translated Green functions
//! `G_s^m(z₁, z₂) = −2 Σ_{γ ∈ Γ\M_m} Q_{s−1}(1 + |z₁ − γz₂|²/(2 Im z₁ Im γz₂))`, `Γ = PSL₂(ℤ)`.
//!
//! The sum over `M_m` is organized as a sum over the `σ₁(m)` Hecke points
//! `w = (a z₂ + b)/d` (`ad = m`, `0 ≤ b < d`) of full `PSL₂(ℤ)`-orbit sums.  Each orbit
//! sum is enumerated by bottom rows `(c, d)` and translates, with a smooth cutoff
//! `W(t/T)` (`W = 1` below 1, `0` above 2) and the main-term correction
//! `6·∫ Q_{s−1}(t)(1 − W(t/T)) dt`, since the number of `γ` with `cosh d(z₁, γw) ≤ t`
//! is `6t + O(t^{2/3})`.  The cutoff is increased until the values at `T` and `2T` agree
//! to the requested tolerance.
//!
//! Summation is in double precision with Neumaier compensation; the reduction order is
//! fixed, so results are reproducible bit for bit irrespective of thread count.

use num_integer::Integer;
use rayon::prelude::*;

use super::legendre::LegendreQ;
use crate::error::{Error, Result};

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UHPoint {
    /// Real part.
    pub x: f64,
    /// Imaginary part, positive.
    pub y: f64,
}

impl UHPoint {
    /// `x + iy`; fails unless `y > 0`.
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() || y <= 0.0 {
            return Err(Error::InvalidInput(format!("({x}, {y}) is not in the upper half-plane")));
        }
        Ok(UHPoint { x, y })
    }

    /// The image under `[[a, b], [c, d]]` (any positive determinant).
    pub fn moebius(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
        let den = (c * self.x + d).powi(2) + (c * self.y).powi(2);
        let det = a * d - b * c;
        let x = ((a * self.x + b) * (c * self.x + d) + a * c * self.y * self.y) / den;
        UHPoint { x, y: det * self.y / den }
    }

    /// `cosh` of the hyperbolic distance to `o`.
    pub fn cosh_dist(&self, o: &UHPoint) -> f64 {
        1.0 + ((self.x - o.x).powi(2) + (self.y - o.y).powi(2)) / (2.0 * self.y * o.y)
    }
}

/// Certified-by-doubling value of a Green-function sum.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenValue {
    /// The value at the final cutoff `2T`.
    pub value: f64,
    /// `|value(2T) − value(T)|`, the certification estimate.
    pub error: f64,
    /// Final cutoff `T` in `cosh d`.
    pub cutoff: f64,
    /// Number of group elements summed at the final cutoff.
    pub terms: u64,
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, o: &Acc) {
        self.add(o.sum);
        self.add(o.comp);
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Smooth step: `1` on `x ≤ 1`, `0` on `x ≥ 2`, `C^∞` in between.
pub fn cutoff_weight(x: f64) -> f64 {
    if x <= 1.0 {
        return 1.0;
    }
    if x >= 2.0 {
        return 0.0;
    }
    let u = x - 1.0;
    let f = |v: f64| if v <= 0.0 { 0.0 } else { (-1.0 / v).exp() };
    let (a, b) = (f(u), f(1.0 - u));
    1.0 - a / (a + b)
}

/// `∫_T^∞ Q_{s−1}(t)(1 − W(t/T)) dt` (composite Simpson on `[T, 2T]` plus the exact tail).
fn smoothed_tail(q: &LegendreQ, t: f64) -> f64 {
    let n = 2000;
    let h = t / n as f64;
    let g = |x: f64| q.eval(x) * (1.0 - cutoff_weight(x / t));
    let mut acc = g(t) + g(2.0 * t);
    for k in 1..n {
        acc += g(t + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0 + q.tail_integral(2.0 * t)
}

fn inverse_mod(d: i64, c: i64) -> i64 {
    let e = d.extended_gcd(&c);
    e.x.rem_euclid(c)
}

/// Orbit sums `Σ_{γ ∈ PSL₂(ℤ)} Q(t_γ) W(t_γ/T_i)` for each cutoff `T_i`, and the number of
/// `γ` with `t_γ ≤ 2 max T_i`.
fn orbit_sums(q: &LegendreQ, z1: &UHPoint, w: &UHPoint, cutoffs: &[f64]) -> Result<(Vec<f64>, u64)> {
    let tmax = 2.0 * cutoffs.iter().cloned().fold(0.0, f64::max);
    let y1 = z1.y;
    // t ≤ tmax forces v ≥ v_lo
    let v_lo = y1 * (tmax - (tmax * tmax - 1.0).sqrt());
    let v_lo = v_lo.min(y1 / (2.0 * tmax));
    let norm_max = w.y / v_lo;
    let cmax = (norm_max / (w.y * w.y)).sqrt().floor() as i64;
    let per_c = |c: i64| -> Result<(Vec<Acc>, u64)> {
        let mut accs = vec![Acc::default(); cutoffs.len()];
        let mut count = 0u64;
        let mut visit = |u0: f64, v: f64| -> Result<()> {
            // all translates u0 + k with t ≤ tmax
            let r2 = 2.0 * y1 * v * (tmax - 1.0) - (y1 - v).powi(2);
            if r2 < 0.0 {
                return Ok(());
            }
            let r = r2.sqrt();
            let base = z1.x - u0;
            let k0 = (base - r).ceil() as i64;
            let k1 = (base + r).floor() as i64;
            for k in k0..=k1 {
                let dx = base - k as f64;
                let t = 1.0 + (dx * dx + (y1 - v).powi(2)) / (2.0 * y1 * v);
                if t - 1.0 < 1e-10 {
                    return Err(Error::Singular(format!("z₁ = ({}, {}) lies on the orbit of ({}, {})", z1.x, z1.y, w.x, w.y)));
                }
                if t > tmax {
                    continue;
                }
                count += 1;
                let qt = q.eval(t);
                for (acc, &tc) in accs.iter_mut().zip(cutoffs) {
                    let wt = cutoff_weight(t / tc);
                    if wt > 0.0 {
                        acc.add(qt * wt);
                    }
                }
            }
            Ok(())
        };
        if c == 0 {
            visit(w.x, w.y)?;
        } else {
            let cf = c as f64;
            let room = norm_max - (cf * w.y).powi(2);
            if room >= 0.0 {
                let rr = room.sqrt();
                let d0 = (-cf * w.x - rr).ceil() as i64;
                let d1 = (-cf * w.x + rr).floor() as i64;
                for d in d0..=d1 {
                    if c.gcd(&d) != 1 {
                        continue;
                    }
                    let df = d as f64;
                    let n = (cf * w.x + df).powi(2) + (cf * w.y).powi(2);
                    let a = inverse_mod(d, c);
                    // Re(γw) = a/c − (c x + d)/(c |cw + d|²) with ad ≡ 1 (mod c)
                    let u0 = a as f64 / cf - (cf * w.x + df) / (cf * n);
                    visit(u0, w.y / n)?;
                }
            }
        }
        Ok((accs, count))
    };
    let parts: Vec<Result<(Vec<Acc>, u64)>> = (0..=cmax).into_par_iter().map(per_c).collect();
    let mut total = vec![Acc::default(); cutoffs.len()];
    let mut count = 0;
    for p in parts {
        let (accs, n) = p?;
        for (t, a) in total.iter_mut().zip(&accs) {
            t.merge(a);
        }
        count += n;
    }
    Ok((total.iter().map(Acc::value).collect(), count))
}

/// The `σ₁(m)` Hecke points `(a z + b)/d`, `ad = m`, `0 ≤ b < d`.
pub fn hecke_points(z: &UHPoint, m: u64) -> Vec<UHPoint> {
    let mut out = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let a = (m / d) as i64;
        for b in 0..d as i64 {
            out.push(UHPoint { x: (a as f64 * z.x + b as f64) / d as f64, y: a as f64 * z.y / d as f64 });
        }
    }
    out
}

/// Smoothed-cutoff approximation of `G_s^m(z₁, z₂)` at cutoff `T`, and at `2T`.
fn green_at(q: &LegendreQ, m: u64, z1: &UHPoint, z2: &UHPoint, t: f64) -> Result<(f64, f64, u64)> {
    let pts = hecke_points(z2, m);
    let cut = [t, 2.0 * t];
    let mut sums = [Acc::default(), Acc::default()];
    let mut terms = 0;
    for w in &pts {
        let (v, n) = orbit_sums(q, z1, w, &cut)?;
        sums[0].add(v[0]);
        sums[1].add(v[1]);
        terms += n;
    }
    let np = pts.len() as f64;
    let v1 = -2.0 * (sums[0].value() + 6.0 * np * smoothed_tail(q, t));
    let v2 = -2.0 * (sums[1].value() + 6.0 * np * smoothed_tail(q, 2.0 * t));
    Ok((v1, v2, terms))
}

/// Largest cutoff tried before giving up.
pub const MAX_CUTOFF: f64 = 4.0e6;

/// `G_s^m(z₁, z₂)` for `s > 1`, certified by cutoff doubling to `tol`.
///
/// Fails with [`Error::Singular`] if `z₁` is a Hecke translate of `z₂` (the logarithmic
/// singularity) and with [`Error::Tolerance`] if the cutoff cap is reached first.
pub fn green_hecke(s: f64, m: u64, z1: &UHPoint, z2: &UHPoint, tol: f64) -> Result<GreenValue> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidInput(format!("the Green function sum needs s > 1, got {s}")));
    }
    if m == 0 {
        return Err(Error::InvalidInput("Hecke index must be positive".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let q = LegendreQ::new(s)?;
    let mut t = 64.0;
    loop {
        let (v1, v2, terms) = green_at(&q, m, z1, z2, t)?;
        let err = (v2 - v1).abs();
        if err < tol {
            return Ok(GreenValue { value: v2, error: err, cutoff: 2.0 * t, terms });
        }
        if t >= MAX_CUTOFF {
            return Err(Error::Tolerance(format!("G_{s}^{m}: cutoff {t} reached with doubling difference {err:e} > {tol:e}")));
        }
        t *= 4.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(b: f64, a: f64, d: f64) -> UHPoint {
        // root (−b + i√|d|)/(2a) of a z² + b z + c
        UHPoint::new(-b / (2.0 * a), d.abs().sqrt() / (2.0 * a)).unwrap()
    }

    #[test]
    fn weight_is_smooth_step() {
        assert_eq!(cutoff_weight(0.5), 1.0);
        assert_eq!(cutoff_weight(2.5), 0.0);
        assert!((cutoff_weight(1.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn first_example_value() {
        let i = UHPoint::new(0.0, 1.0).unwrap();
        let g = green_hecke(3.0, 1, &i, &cm(-1.0, 1.0, -23.0), 1e-10).unwrap();
        assert!((g.value + 1.000394556341).abs() < 1e-9, "{g:?}");
    }

    #[test]
    fn diagonal_is_singular() {
        let z = UHPoint::new(0.1, 1.3).unwrap();
        assert!(matches!(green_hecke(2.0, 1, &z, &z, 1e-6), Err(Error::Singular(_))));
        let w = z.moebius(2, 1, 1, 1);
        assert!(matches!(green_hecke(2.0, 1, &z, &w, 1e-6), Err(Error::Singular(_))));
    }

    #[test]
    fn twisted_example_value() {
        let rho = UHPoint::new(0.5, 3f64.sqrt() / 2.0).unwrap();
        let g = green_hecke(2.0, 1, &rho, &cm(-1.0, 1.0, -7.0), 1e-8).unwrap();
        assert!((g.value + 8.786454145857).abs() < 1e-8, "{g:?}");
    }

    #[test]
    fn symmetric_and_invariant() {
        let z1 = UHPoint::new(0.23, 1.1).unwrap();
        let z2 = UHPoint::new(-0.31, 0.87).unwrap();
        let tol = 1e-9;
        let a = green_hecke(3.0, 1, &z1, &z2, tol).unwrap().value;
        let b = green_hecke(3.0, 1, &z2, &z1, tol).unwrap().value;
        assert!((a - b).abs() < 4.0 * tol);
        for (p, q, r, t) in [(2, 1, 1, 1), (5, 3, 3, 2), (1, -7, 0, 1), (7, -4, 2, -1)] {
            let c = green_hecke(3.0, 1, &z1.moebius(p, q, r, t), &z2, tol).unwrap().value;
            assert!((a - c).abs() < 4.0 * tol, "{a} vs {c}");
        }
    }

    #[test]
    fn hecke_points_count() {
        let z = UHPoint::new(0.1, 1.0).unwrap();
        assert_eq!(hecke_points(&z, 6).len(), 12);
        assert_eq!(hecke_points(&z, 1), vec![z]);
    }
}
