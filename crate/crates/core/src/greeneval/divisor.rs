//! Green functions summed against weighted divisors and weakly holomorphic inputs:
//! `G_{1+j,f}(Z, z₂) = Σ_{P ∈ Z} w_P Σ_{m>0} c_f(−m) mʲ G^m_{1+j}(P, z₂)`.

use num_traits::ToPrimitive;

use super::green::{green_hecke, GreenValue, UHPoint};
use crate::arith::rational::to_f64;
use crate::error::{Error, Result};
use crate::qforms::HeegnerDivisor;
use crate::whbasis::ScalarForm;

/// `Σ_P w_P Σ_m c_f(−m) mʲ G^m_{1+j}(P, z₂)`, each Green value certified to
/// `tol / (Σ |w_P| · Σ |c_f(−m)| mʲ)` so the total is within `tol`.
pub fn green_divisor(j: u32, f: &ScalarForm, div: &HeegnerDivisor, z2: &UHPoint, tol: f64) -> Result<GreenValue> {
    if f.weight != -2 * j as i64 {
        return Err(Error::InvalidInput(format!("input has weight {}, expected {}", f.weight, -2 * j as i64)));
    }
    let pp = f.principal_part();
    let s = 1.0 + j as f64;
    let wsum: f64 = div.points.iter().map(|(w, _)| to_f64(w).abs()).sum();
    let csum: f64 = pp.iter().map(|(m, c)| to_f64(c).abs() * (*m as f64).powi(j as i32)).sum();
    if wsum == 0.0 || csum == 0.0 {
        return Ok(GreenValue { value: 0.0, error: 0.0, cutoff: 0.0, terms: 0 });
    }
    let inner_tol = tol / (wsum * csum);
    let mut value = 0.0;
    let mut error = 0.0;
    let mut terms = 0;
    let mut cutoff: f64 = 0.0;
    for (w, p) in &div.points {
        let (x, y) = p.to_f64();
        let z1 = UHPoint::new(x, y)?;
        for (m, c) in &pp {
            let g = green_hecke(s, m.to_u64().expect("positive index"), &z1, z2, inner_tol)?;
            let k = to_f64(w) * to_f64(c) * (*m as f64).powi(j as i32);
            value += k * g.value;
            error += k.abs() * g.error;
            terms += g.terms;
            cutoff = cutoff.max(g.cutoff);
        }
    }
    Ok(GreenValue { value, error, cutoff, terms })
}
