//! Constant-term pairings `CT⟨f, g⟩ = coefficient of q⁰ in Σ_μ f_μ g_μ`, both for
//! fully known series and symbolically against a form whose coefficients are unknowns.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::bracket::rc_monomial;
use super::theta::ThetaSeries;
use crate::arith::qseries::QSeries;
use crate::arith::rational::Rational;
use crate::error::{Error, Result};

/// Lowest exponent that may carry a nonzero (known or unknown) coefficient.
fn support_floor(s: &QSeries) -> Option<Rational> {
    match (s.valuation(), s.order()) {
        (Some(v), _) => Some(v),
        (None, o) => o,
    }
}

/// `CT⟨f, g⟩ = [q⁰] Σ_μ f_μ g_μ`.
///
/// Fails with [`Error::InsufficientOrder`] when an unknown coefficient of one
/// side could meet a possibly nonzero coefficient of the other.
pub fn ct_pair(f: &[QSeries], g: &[QSeries]) -> Result<Rational> {
    if f.len() != g.len() {
        return Err(Error::Incompatible(format!("{} vs {} components", f.len(), g.len())));
    }
    let mut acc = Rational::zero();
    for (mu, (a, b)) in f.iter().zip(g).enumerate() {
        for (x, y) in [(a, b), (b, a)] {
            if let (Some(ox), Some(fy)) = (x.order(), support_floor(y)) {
                if fy <= -ox.clone() {
                    return Err(Error::InsufficientOrder(format!(
                        "component {mu}: terms from q^{ox} are unknown but the partner reaches q^{fy}"
                    )));
                }
            }
        }
        for (e, c) in a.terms() {
            if let Some(d) = b.coeff(&-e) {
                if !d.is_zero() {
                    acc += c * d;
                }
            }
        }
    }
    Ok(acc)
}

/// Symbolic pairing `CT⟨F, [Θ, 𝒢]_n⟩` where `𝒢 = Σ_ν Σ_m c(m, ν) q^m φ_ν` has unknown
/// coefficients that vanish for `m < m_min`.
///
/// `f[p][ν]` is the component of `F` at `p + ν` in the orthogonal sum indexed by
/// `Θ`'s group (`p`) and `𝒢`'s group (`ν`); `l` is the weight of `𝒢`.  The result maps
/// `(m, ν)` to the coefficient of `c(m, ν)`, to be multiplied by `Θ.prefactor`.
pub fn ct_pair_bracket(
    f: &[Vec<QSeries>],
    theta: &ThetaSeries,
    l: &Rational,
    n: u32,
    m_min: &Rational,
) -> Result<BTreeMap<(Rational, usize), Rational>> {
    if f.len() != theta.components.len() {
        return Err(Error::Incompatible("Θ group and F do not match".into()));
    }
    let mut out: BTreeMap<(Rational, usize), Rational> = BTreeMap::new();
    let limit = -m_min.clone();
    for (p, row) in f.iter().enumerate() {
        let th = &theta.components[p];
        for (nu, comp) in row.iter().enumerate() {
            // b = −e − a ≥ m_min with a ≥ 0 needs every e ≤ −m_min.
            if let Some(o) = comp.order() {
                if o <= limit {
                    return Err(Error::InsufficientOrder(format!("component ({p},{nu}) known below q^{o}, need beyond q^{limit}")));
                }
            }
            for (e, c) in comp.terms() {
                if e > limit {
                    break;
                }
                let amax = &limit - &e;
                if let Some(o) = th.order() {
                    if o <= amax {
                        return Err(Error::InsufficientOrder(format!("theta component {p} known below q^{o}, need beyond q^{amax}")));
                    }
                }
                for (a, t) in th.terms() {
                    if a > amax {
                        break;
                    }
                    let b = -(&e + &a);
                    let w = rc_monomial(&theta.weight, l, n, &a, &b);
                    if w.is_zero() {
                        continue;
                    }
                    *out.entry((b, nu)).or_insert_with(Rational::zero) += c * t * w;
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}
