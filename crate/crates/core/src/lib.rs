//! Exact symbolic engine for braided binomial operators, bounded
//! diamond-lemma rewriting in free algebras, Drinfeld–Jimbo presentations and
//! q-oscillator comodules.
//!
//! Everything is exact: coefficients live in the field of rational functions
//! in `t = q^(1/m)` over the rationals ([`scalar`]).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod braided;
pub mod envelope;
pub mod freealg;
pub mod linalg;
pub mod oscillator;
pub mod report;
pub mod scalar;

use alloc::string::String;
use core::fmt;

pub use freealg::{AlgebraError, GenId, GeneratorTable, NcPoly, RewriteSystem, Word};
pub use linalg::{LinalgError, Matrix, OmegaTensor, TensorOperator};
pub use report::{CheckEntry, Report, Status};
pub use scalar::{Exponent, LaurentPoly, Rational, RootOrder, Scalar, ScalarError};

/// Errors surfaced by the higher-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Scalar(ScalarError),
    Linalg(LinalgError),
    Algebra(AlgebraError),
    /// Arguments outside an operation's domain.
    Input(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Scalar(e) => write!(f, "{e}"),
            Error::Linalg(e) => write!(f, "{e}"),
            Error::Algebra(e) => write!(f, "{e}"),
            Error::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<ScalarError> for Error {
    fn from(e: ScalarError) -> Self {
        Error::Scalar(e)
    }
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Error::Linalg(e)
    }
}

impl From<AlgebraError> for Error {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Scalar(s) => Error::Scalar(s),
            other => Error::Algebra(other),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
