//! Exact computations with finite-dimensional Hopf algebras over `GF(p)`.
//!
//! Algebras are stored as structure constants on a fixed basis. Subspaces
//! are kept in reduced row echelon form, so equality of subspaces is
//! equality of their bases.

pub mod algebra;
pub mod builders;
mod error;
pub mod format;
pub mod gfp;
pub mod hopf;
pub mod locality;
pub mod report;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
