//! Exact min-plus (tropical) linear algebra.
//!
//! The crate computes tropical determinants with complete witness sets,
//! tropical and symmetric tropical ranks with certificates, the linear cells
//! that determinantal tropical prevarieties trace out around a point, and the
//! dimension bookkeeping that compares those prevarieties against the
//! corresponding tropical varieties. All arithmetic is exact: scalars are
//! rationals and singularity is a literal tie, never an epsilon test.
//!
//! Core types are generic over the [`Scalar`] trait; the crate root exports
//! the two concrete instantiations, [`Rational`] (arbitrary precision, the
//! default everywhere) and [`Rational64`] (fixed width, faster on small
//! inputs, panics on overflow).

pub mod assignment;
pub mod cells;
pub mod constructions;
mod error;
pub mod io;
pub mod matrix;
pub mod rank;
mod scalar;
pub mod theory;
pub mod tropoly;

pub use error::{Axis, Error, Result};
pub use matrix::{Bijection, SubIndex, SymMonomial, TropMatrix};
pub use scalar::Scalar;

/// Arbitrary-precision rational scalar; the default instantiation.
pub type Rational = num_rational::BigRational;

/// Fixed-width rational scalar backed by `i64`.
pub type Rational64 = num_rational::Ratio<i64>;

/// Matrix over the default scalar.
pub type Matrix = TropMatrix<Rational>;

/// Which notion of singularity a computation uses: plain bijections, or
/// bijections up to the identification of `(i, j)` with `(j, i)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Standard,
    Symmetric,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Standard => write!(f, "standard"),
            Mode::Symmetric => write!(f, "symmetric"),
        }
    }
}
