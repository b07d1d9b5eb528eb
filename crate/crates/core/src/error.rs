//! Error type shared by every module of the crate.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in a computation.
///
/// Variants are coarse on purpose: callers (mainly the command-line front end)
/// distinguish "bad input" from "the computation could not be certified", and
/// the message carries the details.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Arguments violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Two series (or forms) cannot be combined.
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    /// Shipped or user-supplied data is inconsistent.
    #[error("data error: {0}")]
    Data(String),
    /// A nonzero element was required.
    #[error("zero element where a unit was required")]
    ZeroElement,
    /// A lattice Gram matrix is singular or violates evenness.
    #[error("degenerate lattice: {0}")]
    Degenerate(String),
    /// A series was truncated too early to determine the requested quantity.
    #[error("insufficient series order: {0}")]
    InsufficientOrder(String),
    /// A prescribed principal part is not realised by any weakly holomorphic form.
    #[error("principal part not realisable: {0}")]
    Unrealisable(String),
    /// The requested coefficient is not stored in the table and not forced to vanish.
    #[error("coefficient table incomplete: {0}")]
    TableIncomplete(String),
    /// The evaluation point lies on the logarithmic singularity.
    #[error("singular configuration: {0}")]
    Singular(String),
    /// The requested tolerance cannot be reached.
    #[error("tolerance not achievable: {0}")]
    Tolerance(String),
}
