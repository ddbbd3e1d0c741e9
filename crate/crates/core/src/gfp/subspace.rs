use std::fmt;

use super::{Field, Matrix};
use crate::error::{Error, Result};

/// A linear subspace of `GF(p)^n`, stored by its canonical reduced row
/// echelon basis (no zero rows). Two subspaces are equal exactly when their
/// canonical bases coincide, so derived `Eq`/`Hash` are subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}^{}) {:?}", self.dim(), self.field, self.ambient, self.rows)
    }
}

/// Incremental echelon basis. Every stored row has a unit pivot and zeros in
/// all other rows' pivot columns, so reduction is order-independent.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl SpanBuilder {
    pub fn new(field: Field, ambient: usize) -> Self {
        SpanBuilder { field, ambient, rows: Vec::new(), pivots: Vec::new(), row_of_col: vec![None; ambient] }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        let mut b = Self::new(s.field, s.ambient);
        for (r, (row, &pc)) in s.rows.iter().zip(&s.pivots).enumerate() {
            b.rows.push(row.clone());
            b.pivots.push(pc);
            b.row_of_col[pc] = Some(r);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Reduce `v` in place against the current basis.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Insert a vector; returns `true` if the span grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        if self.is_full() {
            return false;
        }
        let f = self.field;
        let mut w: Vec<u32> = v.iter().map(|&c| c % f.p()).collect();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        f.scale(&mut w, inv);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &w);
            }
        }
        self.row_of_col[pc] = Some(self.rows.len());
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn finish(self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut rows = self.rows;
        let pivots = order.iter().map(|&r| self.pivots[r]).collect();
        let mut sorted = Vec::with_capacity(rows.len());
        for &r in &order {
            sorted.push(std::mem::take(&mut rows[r]));
        }
        Subspace { field: self.field, ambient: self.ambient, rows: sorted, pivots }
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors, in canonical form.
    pub fn span<I, V>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut b = SpanBuilder::new(field, ambient);
        for v in vectors {
            if b.is_full() {
                break;
            }
            b.insert(v.as_ref());
        }
        b.finish()
    }

    /// Span of standard basis vectors `e_i` for the given indices.
    pub fn coordinate(field: Field, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            field,
            ambient,
            indices.into_iter().map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            }),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, &self.rows).expect("rows have ambient length")
    }

    /// Coordinates that are not pivots of the canonical basis; the standard
    /// complement used for quotients.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_ambient(&self, other_dim: usize) -> Result<()> {
        if other_dim != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other_dim });
        }
        Ok(())
    }

    /// Reduce `v` modulo the subspace; the result is the canonical
    /// representative of `v + U` (zero on every pivot column).
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut w: Vec<u32> = v.iter().map(|&c| c % f.p()).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        self.residual(v).iter().all(|&c| c == 0)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v ∉ U`.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc] % self.field.p()).collect())
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coords) {
            self.field.axpy(&mut v, c, row);
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let mut b = SpanBuilder::from_subspace(self);
        for r in &other.rows {
            b.insert(r);
        }
        Ok(b.finish())
    }

    /// Intersection, computed as `ann(ann(a) + ann(b))`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{w : ⟨w, u⟩ = 0 for all u ∈ U}` under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.field, self.ambient);
        }
        self.basis_matrix().kernel()
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        self.check_ambient(m.cols())?;
        Ok(Subspace::span(self.field, m.rows(), self.rows.iter().map(|r| m.apply(r))))
    }
}

/// Free-standing lattice operations, mirroring the method forms.
pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn annihilator(u: &Subspace) -> Subspace {
    u.annihilator()
}
