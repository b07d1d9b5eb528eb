//! The closed CM-value formula: assembling the exact functional on Maass-form
//! coefficients, evaluating it against a coefficient table, and cross-checking against
//! direct evaluation of the Green function.

pub mod crosscheck;
pub mod evaluate;
pub mod functional;
pub mod setup;
pub mod worked;

pub use crosscheck::{crosscheck_direct, crosscheck_direct_at, CrosscheckReport};
pub use evaluate::evaluate_cm_value;
pub use functional::{formula_functional, restricted_lift, theta_block, CoefficientFunctional, FunctionalTerm};
pub use setup::{build_cm_setup, CMSetup};
pub use worked::{bundled_table, compare_with_display, worked_examples, ReferenceComparison, ReferenceTerm, WorkedExample};
