//! Calculator for CM values of higher automorphic Green functions.
//!
//! The crate evaluates the higher Green functions `G_{j+1,f}` at pairs of CM
//! points in two independent ways:
//!
//! * directly, by summing the defining series of Legendre functions over
//!   integer matrices of fixed determinant ([`greeneval`]);
//! * exactly, by a constant-term pairing between a twisted Zagier lift, a theta
//!   series of a unary lattice and the holomorphic part of a harmonic Maass form
//!   for a binary lattice ([`cmformula`]).  The second route produces a rational
//!   (or rational-times-surd) linear functional on the Maass-form coefficients,
//!   which are logarithms of explicit algebraic numbers ([`maassfield`]).
//!
//! Module map:
//!
//! | module | contents |
//! |---|---|
//! | [`arith`] | rationals, q-series, polynomials, number fields, big floats, linear algebra |
//! | [`discforms`] | even lattices, discriminant groups, Weil representation, rescaling, ψ_Δ |
//! | [`qforms`] | binary quadratic forms, class groups, genus characters, Heegner divisors |
//! | [`whbasis`] | level-one forms, plus-space bases, Zagier lift, duality bases, Shimura lift |
//! | [`thetablocks`] | theta series, Rankin–Cohen brackets, constant-term pairing |
//! | [`greeneval`] | hypergeometric and Legendre functions, lattice sums for Green functions |
//! | [`maassfield`] | coefficient tables of harmonic Maass forms over number fields |
//! | [`cmformula`] | CM setup, the exact coefficient functional, evaluation and cross-checks |

pub mod arith;
pub mod cmformula;
pub mod discforms;
pub mod error;
pub mod greeneval;
pub mod maassfield;
pub mod qforms;
pub mod thetablocks;
pub mod whbasis;

pub use arith::{BigComplex, BigReal, NFElem, NumberField, QPoly, QSeries, Rational, Surd};
pub use cmformula::{CMSetup, CoefficientFunctional, CrosscheckReport};
pub use discforms::{DiscGroup, DiscVector, EmbeddedLattice, EvenLattice};
pub use error::{Error, Result};
pub use greeneval::{GreenValue, UHPoint};
pub use maassfield::{CoefficientTable, GaloisMove};
pub use qforms::{CMPoint, HeegnerDivisor, BQF};
pub use whbasis::{PlusForm, ScalarForm, VVForm};
