use std::fmt;

use super::{Field, Subspace};
use crate::error::{Error, Result};

/// Dense matrix over GF(p), row-major.
///
/// As a linear map it acts on column vectors: `apply(v) = M·v`, so column
/// `j` is the image of the `j`-th basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from rows; entries are reduced mod p.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().map(|&c| c % field.p()));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Build from the images of the basis vectors (the columns).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.p();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// `M·v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let p = self.field.p() as u64;
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += a * b as u64;
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (a % p) as u32;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form, in place. Returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, lead * self.cols + k);
                }
            }
            let inv = f.inv(self.get(lead, c));
            for k in c..self.cols {
                let v = self.get(lead, k);
                self.data[lead * self.cols + k] = f.mul(v, inv);
            }
            let pivot_row: Vec<u32> = self.row(lead).to_vec();
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor != 0 {
                    let neg = f.neg(factor);
                    let row = &mut self.data[r * self.cols..(r + 1) * self.cols];
                    f.axpy(row, neg, &pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    /// Rank and canonical reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> (usize, Matrix) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        (rank, m)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// `{v : M·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (_, r) = self.rref();
        let f = self.field;
        let pivots: Vec<usize> =
            (0..r.rows).map(|i| r.row(i).iter().position(|&c| c != 0).unwrap()).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis = (0..self.cols).filter(|&c| !is_pivot[c]).map(|free| {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            v
        });
        Subspace::span(f, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, (0..self.cols).map(|c| self.column(c)))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Convenience wrapper for the free-standing rref operation.
pub fn rref(m: &Matrix) -> (usize, Matrix) {
    m.rref()
}

/// Kernel of a linear map given by the images of its `domain` basis vectors
/// in a space of dimension `target`, each image given sparsely.
///
/// Only the target coordinates that actually occur are materialized, which
/// keeps tensor-square targets (`n²` coordinates) cheap.
pub fn kernel_of_images(field: Field, target: usize, images: &[super::SparseVec]) -> Subspace {
    let domain = images.len();
    let mut used = vec![u32::MAX; target];
    let mut rows = 0usize;
    for img in images {
        for (i, _) in img.iter() {
            if used[i] == u32::MAX {
                used[i] = rows as u32;
                rows += 1;
            }
        }
    }
    let mut m = Matrix::zero(field, rows, domain);
    for (j, img) in images.iter().enumerate() {
        for (i, c) in img.iter() {
            m.data[used[i] as usize * domain + j] = c;
        }
    }
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(gf(2), 3);
        let (rank, r) = rref(&id);
        assert_eq!(rank, 3);
        assert_eq!(r, id);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zero(gf(3), 2, 4);
        let (rank, r) = z.rref();
        assert_eq!(rank, 0);
        assert_eq!(r.rows(), 0);
    }

    #[test]
    fn rref_singular_mod_three() {
        // det = 1 - 4 = 0 mod 3
        let m = Matrix::from_rows(gf(3), 2, &[vec![1, 2], vec![2, 1]]).unwrap();
        let (rank, r) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row_vectors(), vec![vec![1, 2]]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(gf(5), 3).kernel().dim(), 0);
        assert_eq!(Matrix::zero(gf(2), 4, 4).kernel(), Subspace::full(gf(2), 4));
        let m = Matrix::from_rows(gf(3), 2, &[vec![1, 2], vec![2, 1]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.basis(), &[vec![1, 1]]);
        assert!(m.apply(&[1, 1]).iter().all(|&c| c == 0));
    }

    #[test]
    fn pow_of_nilpotent_shift() {
        let f = gf(3);
        let mut n = Matrix::zero(f, 3, 3);
        n.set(0, 1, 1);
        n.set(1, 2, 1);
        assert!(!n.pow(2).unwrap().is_zero());
        assert!(n.pow(3).unwrap().is_zero());
        assert_eq!(n.pow(0).unwrap(), Matrix::identity(f, 3));
    }

    #[test]
    fn kernel_of_sparse_images_matches_dense() {
        let f = gf(3);
        let imgs = vec![
            super::super::SparseVec::from_dense(&[1, 0, 2, 0]),
            super::super::SparseVec::from_dense(&[2, 0, 1, 0]),
            super::super::SparseVec::from_dense(&[0, 0, 0, 0]),
        ];
        let k = kernel_of_images(f, 4, &imgs);
        let dense = Matrix::from_columns(f, 4, &imgs.iter().map(|s| s.to_dense(4)).collect::<Vec<_>>())
            .unwrap()
            .kernel();
        assert_eq!(k, dense);
        assert_eq!(k.dim(), 2);
    }
}
