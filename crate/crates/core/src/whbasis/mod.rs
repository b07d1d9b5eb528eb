//! Level-one scalar forms, half-integral weight plus-space bases, the Zagier
//! lift, the paired bases of the Bruinier–Funke duality, and the Shimura lift on
//! Fourier coefficients.

pub mod duality;
pub mod plus;
pub mod scalar;
pub mod shimura;
pub mod zagier;

pub use duality::{duality_bases, DualityBases};
pub use plus::{level_one_lattice, plus_space_basis, theta, PlusForm, PlusSpace, Rep, VVForm};
pub use scalar::{delta, delta_inverse, eisenstein_series, euler_product, standard_input, ScalarForm};
pub use shimura::shimura_lift;
pub use zagier::{zagier_lift, ZagierLift};
