use crate::error::{Error, Result};
use crate::gfp::{SpanBuilder, Subspace};

/// Tensor-square coordinate of `e_j ⊗ e_k` in dimension `n`.
#[inline]
pub fn tensor_index(n: usize, j: usize, k: usize) -> usize {
    j * n + k
}

/// `U ⊗ V` as a subspace of the tensor square.
pub fn tensor_span(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    let n = u.ambient();
    if v.ambient() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.ambient() });
    }
    let f = u.field();
    let mut b = SpanBuilder::new(f, n * n);
    for a in u.basis() {
        for c in v.basis() {
            let mut w = vec![0; n * n];
            for (j, &x) in a.iter().enumerate().filter(|e| *e.1 != 0) {
                for (k, &y) in c.iter().enumerate().filter(|e| *e.1 != 0) {
                    w[tensor_index(n, j, k)] = f.mul(x, y);
                }
            }
            b.insert(&w);
        }
    }
    Ok(b.finish())
}
