//! Level-one scalar q-series: Eisenstein series, the discriminant function,
//! Euler's product, and the standard weakly holomorphic inputs `f ∈ M^!_{−2j}`.

use num_traits::{One, Zero};

use crate::arith::qseries::QSeries;
use crate::arith::rational::{bernoulli, int, sigma, Rational};
use crate::error::{Error, Result};

/// Integral-weight level-one form given by its q-expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarForm {
    /// Weight.
    pub weight: i64,
    /// q-expansion with integer exponents.
    pub q: QSeries,
}

impl ScalarForm {
    /// Wraps an expansion; exponents must be integral.
    pub fn new(weight: i64, q: QSeries) -> Result<Self> {
        if q.den() != 1 {
            return Err(Error::InvalidInput("scalar forms have integer exponents".into()));
        }
        Ok(ScalarForm { weight, q })
    }

    /// Coefficient `c_f(n)` (`None` beyond the truncation order).
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        self.q.coeff(&int(n))
    }

    /// Principal part `[(m, c_f(−m))]` with `m > 0`, ordered by increasing `m`.
    pub fn principal_part(&self) -> Vec<(i64, Rational)> {
        let mut pp: Vec<(i64, Rational)> =
            self.q.principal_part().into_iter().map(|(e, c)| (-e.to_integer().try_into().unwrap_or(0i64), c)).collect();
        pp.sort_by_key(|(m, _)| *m);
        pp
    }

    /// Product of two forms.
    pub fn mul(&self, other: &Self) -> Self {
        ScalarForm { weight: self.weight + other.weight, q: self.q.mul(&other.q) }
    }
}

/// `Σ_{n ≥ 1} σ_{k−1}(n) qⁿ` plus the constant `c0`, known below `order`.
fn divisor_series(c0: Rational, scale: Rational, k: u32, order: i64) -> QSeries {
    let mut coeffs = Vec::with_capacity(order.max(0) as usize);
    for n in 0..order.max(0) {
        if n == 0 {
            coeffs.push(c0.clone());
        } else {
            coeffs.push(&scale * Rational::from_integer(sigma(k - 1, n as u64)));
        }
    }
    QSeries::from_parts(1, 0, coeffs, Some(order.max(0)))
}

/// Normalized Eisenstein series `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ`, exponents `< order`.
pub fn eisenstein_series(k: i64, order: i64) -> Result<ScalarForm> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidInput(format!("Eisenstein series needs even k ≥ 4, got {k}")));
    }
    let scale = -int(2 * k) / bernoulli(k as usize);
    Ok(ScalarForm { weight: k, q: divisor_series(Rational::one(), scale, k as u32, order) })
}

/// The quasimodular `E₂ = 1 − 24 Σ σ₁(n) qⁿ` (weight tag 2).
pub fn e2_series(order: i64) -> QSeries {
    divisor_series(Rational::one(), int(-24), 2, order)
}

/// Euler's product `Π_{n≥1}(1 − qⁿ)` via the pentagonal number theorem.
pub fn euler_product(order: i64) -> QSeries {
    let n = order.max(0) as usize;
    let mut coeffs = vec![Rational::zero(); n];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < n {
                coeffs[e as usize] = int(if kk.rem_euclid(2) == 0 { 1 } else { -1 });
                any = true;
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_parts(1, 0, coeffs, Some(order.max(0)))
}

/// The discriminant function `Δ = q Π(1 − qⁿ)²⁴`, exponents `< order`.
pub fn delta(order: i64) -> ScalarForm {
    let p = euler_product(order - 1);
    let p24 = p.pow(24, Some(&int(order - 1))).expect("positive power");
    ScalarForm { weight: 12, q: p24.shift(&int(1)) }
}

/// `1/Δ = q⁻¹ Π(1 − qⁿ)⁻²⁴`, exponents `< order`.
pub fn delta_inverse(order: i64) -> ScalarForm {
    let p = euler_product(order + 1);
    let inv = p.pow(-24, Some(&int(order + 1))).expect("unit leading coefficient");
    ScalarForm { weight: -12, q: inv.shift(&int(-1)) }
}

/// The standard input of weight `−2j` with principal part exactly `q⁻¹`:
/// `E₁₀/Δ` (`j = 1`) and `E₄^{3−j/2}/Δ` (`j = 2, 4, 6`).
pub fn standard_input(j: u32, order: i64) -> Result<ScalarForm> {
    let o = order + 1;
    let dinv = delta_inverse(o);
    let num = match j {
        1 => eisenstein_series(4, o)?.mul(&eisenstein_series(6, o)?),
        2 | 4 | 6 => {
            let e = 3 - (j as i64) / 2;
            let mut acc = ScalarForm { weight: 0, q: QSeries::monomial(&Rational::zero(), Rational::one()) };
            let e4 = eisenstein_series(4, o)?;
            for _ in 0..e {
                acc = acc.mul(&e4);
            }
            acc
        }
        _ => return Err(Error::InvalidInput(format!("no named input for j = {j}; pass an explicit expansion"))),
    };
    let f = num.mul(&dinv);
    Ok(ScalarForm { weight: f.weight, q: f.q.truncate(&int(order)) })
}
