//! Exact arithmetic and linear algebra over prime fields GF(p).
//!
//! Vectors are plain `Vec<u32>` coordinate lists with every entry reduced
//! into `[0, p)`; the owning [`Field`] travels with the containing
//! structure. Subspaces are kept in canonical reduced row echelon form so
//! that equality and hashing are exact.

mod field;
mod matrix;
mod sparse;
mod subspace;

pub use field::{Field, MAX_PRIME};
pub use matrix::{kernel_of_images, rref, Matrix};
pub use sparse::{reduce_acc, SparseVec};
pub use subspace::{annihilator, intersect, sum, SpanBuilder, Subspace};

/// A coordinate vector over GF(p).
pub type Vector = Vec<u32>;

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
