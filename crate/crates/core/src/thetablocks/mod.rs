//! Holomorphic building blocks of the CM-value formula: theta series of definite
//! lattices (plain and weight-3/2 weighted), Rankin–Cohen brackets, and
//! constant-term pairings.

pub mod bracket;
pub mod pairing;
pub mod theta;

pub use bracket::{rankin_cohen, rc_monomial, rc_weight};
pub use pairing::{ct_pair, ct_pair_bracket};
pub use theta::{theta_series, theta_series_embedded, theta_weight32, ThetaSeries};
