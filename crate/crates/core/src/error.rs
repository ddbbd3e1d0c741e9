use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..=97")]
    InvalidPrime(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("subspace is not a Hopf subalgebra")]
    NotHopfSubalgebra,
    #[error("Hopf subalgebra is not normal")]
    NotNormal,
    #[error("operation requires a commutative algebra")]
    NonCommutative,
    #[error("unsupported input class: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Hopf algebra has not passed axiom verification")]
    Unverified,
    #[error("axiom verification failed: {}", .0.first_failure().unwrap_or("unknown"))]
    AxiomFailure(Box<VerificationReport>),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("range error: {0}")]
    Range(String),
}
