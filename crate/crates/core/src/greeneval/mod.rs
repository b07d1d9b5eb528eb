//! Direct numerical evaluation: the hypergeometric function, Legendre functions of the
//! second kind, Hecke-translated Green functions on `PSL₂(ℤ)\ℍ`, the vector-indexed
//! functions `Φ_{m,μ}(z, s)`, and divisor sums — the independent check of the closed
//! formula.

pub mod divisor;
pub mod green;
pub mod hyper;
pub mod legendre;
pub mod phi;

pub use divisor::green_divisor;
pub use green::{green_hecke, hecke_points, GreenValue, UHPoint};
pub use hyper::gauss_2f1;
pub use legendre::{legendre_q, legendre_q_closed, legendre_q_hyper, LegendreQ};
pub use phi::phi_m_mu;
