use std::fmt;

use crate::matrix::SubIndex;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
    /// A 1-based row or column index fell outside the matrix.
    IndexOutOfRange { axis: Axis, index: usize, bound: usize },
    /// An operation required the symmetric marker (or actual symmetry).
    NotSymmetric,
    /// The symmetric marker was requested on entries that are not symmetric.
    AsymmetricEntries { row: usize, col: usize },
    /// A selection (index set, coefficient domain) was empty when it may not be.
    EmptySelection,
    /// Malformed matrix or polynomial text.
    Parse { line: usize, message: String },
    /// A minor size `r` outside `1..=min(rows, cols)`.
    InvalidMinorSize { r: usize, max: usize },
    /// A witness cap below 2 cannot decide singularity.
    InvalidCap(usize),
    /// Enumeration hit its witness cap where untruncated results were required.
    CapExceeded { cap: usize },
    /// A submatrix expected to be singular was not (precondition violation).
    NonsingularSubmatrix(SubIndex),
    /// Combination coefficients were requested for a tropically singular matrix.
    SingularInput,
    /// The supplied bijection does not realize the tropical determinant.
    WitnessNotMinimal,
    /// No built-in matrix with this name.
    UnknownBuiltin(String),
    /// Polynomial evaluation met a variable the point does not bind.
    MissingVariable(String),
    /// The requested parameters lie outside the statement being checked.
    OutsideTheorem(String),
    /// The brute-force oracle refuses inputs beyond its size guard.
    OracleSizeExceeded { limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Col => write!(f, "column"),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "expected a square matrix, got {rows}x{cols}")
            }
            Error::IndexOutOfRange { axis, index, bound } => {
                write!(f, "{axis} index {index} out of range 1..={bound}")
            }
            Error::NotSymmetric => write!(f, "operation requires a symmetric matrix"),
            Error::AsymmetricEntries { row, col } => write!(
                f,
                "symmetric marker rejected: entries ({row},{col}) and ({col},{row}) differ"
            ),
            Error::EmptySelection => write!(f, "selection must be nonempty"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::InvalidMinorSize { r, max } => {
                write!(f, "minor size {r} out of range 1..={max}")
            }
            Error::InvalidCap(cap) => write!(f, "witness cap must be at least 2, got {cap}"),
            Error::CapExceeded { cap } => {
                write!(f, "witness enumeration exceeded the cap of {cap}")
            }
            Error::NonsingularSubmatrix(s) => {
                write!(f, "expected every submatrix singular, but {s} is nonsingular")
            }
            Error::SingularInput => write!(f, "matrix is tropically singular"),
            Error::WitnessNotMinimal => {
                write!(f, "bijection does not realize the tropical determinant")
            }
            Error::UnknownBuiltin(name) => write!(f, "unknown built-in matrix `{name}`"),
            Error::MissingVariable(var) => write!(f, "point does not bind variable {var}"),
            Error::OutsideTheorem(msg) => write!(f, "{msg}"),
            Error::OracleSizeExceeded { limit } => {
                write!(f, "oracle accepts matrices with min dimension <= {limit}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
