//! Exact and arbitrary-precision arithmetic foundation.
//!
//! * [`rational`] — exact rationals and integer helpers (Kronecker symbols, divisor sums, Bernoulli numbers);
//! * [`qseries`] — truncated q-expansions with rational exponents;
//! * [`poly`] — rational polynomials;
//! * [`numfield`] — number fields with a pinned complex embedding;
//! * [`bigreal`] — MPFR-backed real and complex numbers;
//! * [`surd`] — exact numbers `a·√r`;
//! * [`linalg`] — Gaussian elimination and Smith normal form.

pub mod bigreal;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod surd;

pub use bigreal::{agree_bits, BigComplex, BigReal};
pub use numfield::{nf_log_abs, real_root_refine, EmbeddingBox, NFElem, NumberField};
pub use poly::QPoly;
pub use qseries::QSeries;
pub use rational::{int, rat, Rational};
pub use surd::Surd;

/// Product of two q-series (free-function form of [`QSeries::mul`]).
pub fn series_multiply(a: &QSeries, b: &QSeries) -> QSeries {
    a.mul(b)
}
