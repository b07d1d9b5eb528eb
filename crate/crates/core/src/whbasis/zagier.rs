//! The Zagier lift `Za_d^j : M^!_{−2j} → M^{!,+}_{1/2−j}`, realized by matching
//! principal parts against the plus-space echelon basis.

use num_traits::{One, Zero};

use super::plus::{PlusForm, PlusSpace};
use super::scalar::ScalarForm;
use crate::arith::rational::{divisors, int, is_fundamental_discriminant, kronecker, rat, Rational};
use crate::arith::surd::Surd;
use crate::error::{Error, Result};

/// `Za_d^j(f) = prefactor · form`, where `form = |d|^{j/2}·Za_d^j(f)` has rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ZagierLift {
    /// `|d|^{−j/2}`.
    pub prefactor: Surd,
    /// The cleared lift in the scalar plus-space model.
    pub form: PlusForm,
}

/// Cleared principal part `Σ_{m>0} c_f(−m) Σ_{n|m} (d/n) nʲ q^{−|d|m²/n²}` in the scalar model.
pub fn lift_principal_part(f: &ScalarForm, d: i64, j: u32) -> Vec<(i64, Rational)> {
    let mut pp: Vec<(i64, Rational)> = Vec::new();
    for (m, c) in f.principal_part() {
        for n in divisors(m as u64) {
            let n = n as i64;
            let chi = kronecker(d, n);
            if chi == 0 {
                continue;
            }
            let e = -d.abs() * (m / n) * (m / n);
            let v = &c * int(chi as i64) * int(n.pow(j));
            match pp.iter_mut().find(|(x, _)| *x == e) {
                Some((_, acc)) => *acc += v,
                None => pp.push((e, v)),
            }
        }
    }
    pp.retain(|(_, c)| !c.is_zero());
    pp.sort_by_key(|(e, _)| *e);
    pp
}

/// The Zagier lift of `f ∈ M^!_{−2j}` for a fundamental discriminant `d` with `(−1)ʲd < 0`,
/// known below scalar exponent `order`.
pub fn zagier_lift(f: &ScalarForm, d: i64, j: u32, order: i64) -> Result<ZagierLift> {
    if f.weight != -2 * j as i64 {
        return Err(Error::InvalidInput(format!("input has weight {}, expected {}", f.weight, -2 * j as i64)));
    }
    if !is_fundamental_discriminant(d) || (if j % 2 == 0 { d >= 0 } else { d <= 0 }) {
        return Err(Error::InvalidInput(format!("d = {d} must be fundamental with (−1)^j d < 0")));
    }
    let weight = rat(1, 2) - int(j as i64);
    let prefactor = Surd::sqrt(&(Rational::one() / Rational::from_integer(num_bigint::BigInt::from(d.abs()).pow(j))))?;
    let pp = lift_principal_part(f, d, j);
    let pole = pp.iter().map(|(e, _)| -e).max().unwrap_or(0);
    let space = PlusSpace::new(&weight, pole, order)?;
    let q = space.with_principal_part(&pp)?;
    Ok(ZagierLift { prefactor, form: PlusForm { weight, rep: space.rep, q } })
}
