//! `Φ_{m,μ}(z, s) = 2Γ(s−¼)/Γ(2s) · Σ_{λ ∈ μ+L, Q(λ)=m} t_λ^{−(2s−½)} F(s−¼, s+¼; 2s; 1/t_λ²)`
//! with `t_λ = |a − b x + c|z|²|/(2√m y)` for `λ = (a, b, c)`, summed directly over the
//! lattice vectors (both signs).
//!
//! Here `t_λ = cosh d(z, z_λ)` for the CM point `z_λ` of `λ`, so the count of `λ` with
//! `t_λ ≤ t` grows like `6·w(m, μ)·t`, `w(m, μ)` the total weight of `Z(m, μ)`; the same
//! smooth cutoff and main-term tail as for the Green function are used.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use rug::Float;

use super::green::{cutoff_weight, GreenValue, UHPoint};
use super::hyper::gauss_2f1_f64;
use crate::arith::rational::{frac, int, to_f64, Rational};
use crate::error::{Error, Result};
use crate::qforms::twisted_divisor;

/// `t^{−(2s−½)} F(s−¼, s+¼; 2s; 1/t²)`.
fn kernel(s: f64, t: f64) -> f64 {
    t.powf(-(2.0 * s - 0.5)) * gauss_2f1_f64(s - 0.25, s + 0.25, 2.0 * s, 1.0 / (t * t))
}

/// `∫_X^∞ kernel(s, t) dt`, termwise on the series in `1/t²`.
fn kernel_tail(s: f64, x: f64) -> f64 {
    let (a, b, c) = (s - 0.25, s + 0.25, 2.0 * s);
    let e0 = 2.0 * s - 1.5;
    let y = 1.0 / (x * x);
    let mut coeff = 1.0;
    let mut pw = x.powf(-e0);
    let mut sum = 0.0;
    for k in 0..10_000 {
        let kf = k as f64;
        let term = coeff * pw / (e0 + 2.0 * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        coeff *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        pw *= y;
    }
    sum
}

fn smoothed_kernel_tail(s: f64, t: f64) -> f64 {
    let n = 2000;
    let h = t / n as f64;
    let g = |x: f64| kernel(s, x) * (1.0 - cutoff_weight(x / t));
    let mut acc = g(t) + g(2.0 * t);
    for k in 1..n {
        acc += g(t + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0 + kernel_tail(s, 2.0 * t)
}

/// Smallest-prime-factor sieve up to `n`.
fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for k in (i..=n).step_by(i) {
                if spf[k] == 0 {
                    spf[k] = i as u32;
                }
            }
        }
    }
    spf
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    r
}

/// Square roots of `d` modulo an odd prime `p` (Tonelli–Shanks).
fn sqrt_mod_prime(d: u64, p: u64) -> Vec<u64> {
    let d = d % p;
    if d == 0 {
        return vec![0];
    }
    if powmod(d, (p - 1) / 2, p) != 1 {
        return vec![];
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|z| powmod(*z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
    let (mut m, mut c, mut t, mut r) = (s, powmod(z, q, p), powmod(d, q, p), powmod(d, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    if r == p - r {
        vec![r]
    } else {
        vec![r, p - r]
    }
}

/// Square roots of `d` modulo `p^e`, lifted one power at a time.
fn sqrt_mod_prime_power(d: u64, p: u64, e: u32) -> Vec<u64> {
    let mut roots = if p == 2 { (0..2).filter(|x| (x * x + 2 - d % 2) % 2 == 0).collect() } else { sqrt_mod_prime(d, p) };
    let mut pk = p;
    for _ in 1..e {
        let next = pk * p;
        let dn = d % next;
        let mut lifted = Vec::new();
        for r in &roots {
            for k in 0..p {
                let x = r + k * pk;
                if mulmod(x, x, next) == dn {
                    lifted.push(x);
                }
            }
        }
        roots = lifted;
        pk = next;
    }
    roots
}

/// All `x mod n` with `x² ≡ d (mod n)`, `n` factored by the sieve.
fn sqrt_mod(d: u64, n: u64, spf: &[u32]) -> Vec<u64> {
    let mut roots = vec![0u64];
    let mut modulus = 1u64;
    let mut rest = n;
    while rest > 1 {
        let p = spf[rest as usize] as u64;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        let pe = p.pow(e);
        let local = sqrt_mod_prime_power(d, p, e);
        if local.is_empty() {
            return vec![];
        }
        // CRT: x ≡ r (mod modulus), x ≡ l (mod pe)
        let inv = modinv(modulus % pe, pe);
        let mut next = Vec::with_capacity(roots.len() * local.len());
        for r in &roots {
            for l in &local {
                let k = mulmod((l + pe - r % pe) % pe, inv, pe);
                next.push(r + modulus * k);
            }
        }
        roots = next;
        modulus *= pe;
    }
    roots
}

fn modinv(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, n as i128, a as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    t.rem_euclid(n as i128) as u64
}

/// Smoothed λ-sums at cutoffs `T` and `2T`.  For each `c` the admissible `b` are the
/// square roots of `−4m` modulo `4|c|` inside the window where `t_λ ≤ 4T`.
fn lambda_sums(s: f64, m: &Rational, z: &UHPoint, t: f64) -> Result<([f64; 2], u64)> {
    let sqm = to_f64(m).sqrt();
    let tmax = 4.0 * t;
    // Im z_λ = √m/|c| ≥ y/(2·tmax) bounds |c|.
    let cmax = (2.0 * tmax * sqm / z.y).floor() as u64;
    let four_m = (m * int(4)).to_integer().to_u64().ok_or_else(|| Error::InvalidInput("m too large".into()))?;
    let spf = spf_sieve(4 * cmax as usize + 4);
    let (x, y) = (z.x, z.y);
    let norm = x * x + y * y;
    let per_c = |c: u64| -> Result<([f64; 2], u64)> {
        let n = 4 * c;
        let d = (n - four_m % n) % n;
        let roots = sqrt_mod(d, n, &spf);
        let mut acc = [0.0f64; 2];
        let mut count = 0;
        // t_λ ≤ tmax forces (x − b/(2c))² ≤ 2 y (√m/c) tmax
        let half = (2.0 * y * sqm / c as f64 * tmax).sqrt();
        for sign in [1i64, -1] {
            let cs = sign * c as i64;
            let cf = cs as f64;
            // Re z_λ = b/(2c) ≈ x, so b = sign·b' with b' in [lo, hi]; roots are symmetric under b ↦ −b
            let (lo, hi) = (2.0 * c as f64 * (x - half), 2.0 * c as f64 * (x + half));
            for r in &roots {
                let first = (lo - *r as f64) / n as f64;
                let mut k = first.ceil() as i64;
                loop {
                    let bp = *r as i64 + k * n as i64;
                    if bp as f64 > hi {
                        break;
                    }
                    k += 1;
                    let b = sign * bp;
                    let a = (four_m as i64 + b * b) / (4 * cs);
                    let tl = (a as f64 - b as f64 * x + cf * norm).abs() / (2.0 * sqm * y);
                    if tl - 1.0 < 1e-10 {
                        return Err(Error::Singular(format!("z lies on the CM point of ({a}, {b}, {cs})")));
                    }
                    if tl > tmax {
                        continue;
                    }
                    count += 1;
                    let h = kernel(s, tl);
                    acc[0] += h * cutoff_weight(tl / t);
                    acc[1] += h * cutoff_weight(tl / (2.0 * t));
                }
            }
        }
        Ok((acc, count))
    };
    let parts: Vec<Result<([f64; 2], u64)>> = (1..=cmax).into_par_iter().map(per_c).collect();
    let mut sums = [0.0f64; 2];
    let mut count = 0;
    for p in parts {
        let (acc, n) = p?;
        sums[0] += acc[0];
        sums[1] += acc[1];
        count += n;
    }
    Ok((sums, count))
}

/// `Φ_{m,μ}(z, s)` for `s > 5/4`, `μ ∈ {0, 1}` the parity class of `b`, certified by cutoff
/// doubling to `tol`.  Returns 0 when no vector has `Q(λ) = m` in the class.
pub fn phi_m_mu(z: &UHPoint, s: f64, m: &Rational, mu: usize, tol: f64) -> Result<GreenValue> {
    if s.is_nan() || s <= 1.25 {
        return Err(Error::InvalidInput(format!("Φ needs s > 5/4, got {s}")));
    }
    if mu > 1 || !m.is_integer() && frac(m) != frac(&Rational::new((-1).into(), 4.into())) {
        return Err(Error::InvalidInput(format!("m = {m} is not Q(λ) for a vector of class {mu}")));
    }
    let class_of_m = if m.is_integer() { 0 } else { 1 };
    if class_of_m != mu || *m <= int(0) {
        return Ok(GreenValue { value: 0.0, error: 0.0, cutoff: 0.0, terms: 0 });
    }
    // total weight of Z(m, μ) with both signs
    let weight: f64 = 2.0 * twisted_divisor(1, 1, m)?.points.iter().map(|(w, _)| to_f64(w)).sum::<f64>();
    let g = |x: f64| Float::with_val(128, x).gamma();
    let pref = (g(s - 0.25) * 2u32 / g(2.0 * s)).to_f64();
    let mut t = 64.0;
    loop {
        let (sums, terms) = lambda_sums(s, m, z, t)?;
        let v1 = pref * (sums[0] + 6.0 * weight * smoothed_kernel_tail(s, t));
        let v2 = pref * (sums[1] + 6.0 * weight * smoothed_kernel_tail(s, 2.0 * t));
        let err = (v2 - v1).abs();
        if err < tol {
            return Ok(GreenValue { value: v2, error: err, cutoff: 2.0 * t, terms });
        }
        if t >= super::green::MAX_CUTOFF {
            return Err(Error::Tolerance(format!("Φ: cutoff {t} reached with difference {err:e}")));
        }
        t *= 4.0;
    }
}
