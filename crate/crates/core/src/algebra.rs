//! Finite-dimensional associative unital algebras given by structure
//! constants, with the subspace calculus the Hopf layers need: products of
//! subspaces, generated subalgebras and ideals, power chains, Frobenius
//! radicals of commutative algebras and idempotent lifting.

use crate::error::{Error, Result};
use crate::gfp::{basis_vector, reduce_acc, Field, Matrix, SpanBuilder, SparseVec, Subspace, Vector};
use crate::report::{VerificationReport, Witnesses};

/// Algebra with basis `e_0 … e_{n-1}`. `mult[i*n + j]` holds `e_i·e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mult: Vec<SparseVec>,
    unit: Vector,
}

/// Powers `I ⊇ I² ⊇ …` of a subspace, up to the first repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealChain {
    pub ideal: Subspace,
    pub powers: Vec<Subspace>,
    pub nilpotent: bool,
    /// Smallest `t` with `I^t = 0`, when nilpotent.
    pub index: Option<usize>,
}

impl IdealChain {
    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(Subspace::dim).collect()
    }

    /// `I^k` for `k ≥ 1`; terms past the end equal the stable term.
    pub fn power(&self, k: usize) -> &Subspace {
        assert!(k >= 1, "ideal powers start at 1");
        &self.powers[(k - 1).min(self.powers.len() - 1)]
    }
}

impl Algebra {
    pub fn new(field: Field, dim: usize, mult: Vec<SparseVec>, unit: Vector) -> Result<Self> {
        if mult.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: mult.len() });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: unit.len() });
        }
        if let Some(bad) = mult.iter().filter_map(SparseVec::max_index).find(|&k| k >= dim) {
            return Err(Error::Range(format!("product coefficient index {bad} out of range")));
        }
        let unit = unit.into_iter().map(|c| c % field.p()).collect();
        Ok(Algebra { field, dim, mult, unit })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    /// `e_i · e_j`.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    pub fn mult_table(&self) -> &[SparseVec] {
        &self.mult
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    fn check_space(&self, s: &Subspace) -> Result<()> {
        if s.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: s.ambient() });
        }
        Ok(())
    }

    /// Accumulate `c · a·b` for sparse operands.
    pub(crate) fn mul_acc(&self, a: &SparseVec, b: &SparseVec, c: u32, acc: &mut [u64]) {
        let f = self.field;
        for (i, x) in a.iter() {
            let cx = f.mul(c, x);
            for (j, y) in b.iter() {
                self.mult[i * self.dim + j].accumulate(acc, f.mul(cx, y));
            }
        }
    }

    pub(crate) fn mul_sparse(&self, a: &SparseVec, b: &SparseVec) -> Vector {
        let mut acc = vec![0u64; self.dim];
        self.mul_acc(a, b, 1, &mut acc);
        reduce_acc(&self.field, &acc)
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Result<Vector> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul_sparse(&SparseVec::from_dense(a), &SparseVec::from_dense(b)))
    }

    /// `e_k · v`.
    pub(crate) fn mul_basis_left(&self, k: usize, v: &SparseVec, acc: &mut [u64]) {
        for (j, c) in v.iter() {
            self.mult[k * self.dim + j].accumulate(acc, c);
        }
    }

    /// `v · e_k`.
    pub(crate) fn mul_basis_right(&self, v: &SparseVec, k: usize, acc: &mut [u64]) {
        for (i, c) in v.iter() {
            self.mult[i * self.dim + k].accumulate(acc, c);
        }
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Result<Vector> {
        self.check_len(a)?;
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Matrix of `x ↦ h·x`.
    pub fn left_mult_matrix(&self, h: &[u32]) -> Result<Matrix> {
        self.check_len(h)?;
        let hs = SparseVec::from_dense(h);
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| {
                let mut acc = vec![0u64; self.dim];
                self.mul_basis_right(&hs, j, &mut acc);
                reduce_acc(&self.field, &acc)
            })
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Nilpotency test through the left regular representation: `h` is
    /// nilpotent iff `L_h^dim = 0`, and since `L_h^k(1) = h^k` it suffices
    /// to iterate `L_h` on the unit. Returns the nilpotency index if any.
    pub fn nilpotency_index(&self, h: &[u32]) -> Result<Option<usize>> {
        let l = self.left_mult_matrix(h)?;
        let mut v = self.unit.clone();
        for k in 1..=self.dim {
            v = l.apply(&v);
            if v.iter().all(|&c| c == 0) {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn is_nilpotent_element(&self, h: &[u32]) -> Result<bool> {
        Ok(self.nilpotency_index(h)?.is_some())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Check all `n³` associativity triples and the `2n` unit identities.
    pub fn check_associative_unital(&self) -> VerificationReport {
        let n = self.dim;
        let f = self.field;
        let mut report = VerificationReport::new("associative unital algebra");
        let mut assoc = Witnesses::default();
        let mut acc_l = vec![0u64; n];
        let mut acc_r = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    acc_l.iter_mut().for_each(|a| *a = 0);
                    acc_r.iter_mut().for_each(|a| *a = 0);
                    self.mul_basis_right(ij, k, &mut acc_l);
                    self.mul_basis_left(i, self.mul_basis(j, k), &mut acc_r);
                    if acc_l.iter().zip(&acc_r).any(|(&a, &b)| f.reduce(a) != f.reduce(b)) {
                        assoc.push(|| format!("(e{i}e{j})e{k} != e{i}(e{j}e{k})"));
                    }
                }
            }
        }
        assoc.into_report(&mut report, "associativity");
        let unit = SparseVec::from_dense(&self.unit);
        let mut unit_w = Witnesses::default();
        for i in 0..n {
            let e = SparseVec::unit(i);
            let ei = basis_vector(n, i);
            if self.mul_sparse(&unit, &e) != ei {
                unit_w.push(|| format!("1*e{i} != e{i}"));
            }
            if self.mul_sparse(&e, &unit) != ei {
                unit_w.push(|| format!("e{i}*1 != e{i}"));
            }
        }
        unit_w.into_report(&mut report, "unit");
        report
    }

    fn sparse_basis(s: &Subspace) -> Vec<SparseVec> {
        s.basis().iter().map(|r| SparseVec::from_dense(r)).collect()
    }

    /// Smallest subspace containing `gens` (and the unit when `with_unit`)
    /// that is closed under multiplication.
    pub fn generated_subalgebra(&self, gens: &[Vector], with_unit: bool) -> Result<Subspace> {
        for g in gens {
            self.check_len(g)?;
        }
        let mut span = SpanBuilder::new(self.field, self.dim);
        let mut elems: Vec<SparseVec> = Vec::new();
        let mut queue: Vec<Vector> = Vec::new();
        if with_unit {
            queue.push(self.unit.clone());
        }
        queue.extend(gens.iter().cloned());
        let mut pending = std::collections::VecDeque::new();
        for v in queue {
            if span.insert(&v) {
                pending.push_back(elems.len());
                elems.push(SparseVec::from_dense(&v));
            }
        }
        while let Some(idx) = pending.pop_front() {
            if span.is_full() {
                break;
            }
            let v = elems[idx].clone();
            for k in 0..=idx {
                if span.is_full() {
                    break;
                }
                let w = elems[k].clone();
                for prod in [self.mul_sparse(&v, &w), self.mul_sparse(&w, &v)] {
                    if span.insert(&prod) {
                        pending.push_back(elems.len());
                        elems.push(SparseVec::from_dense(&prod));
                    }
                }
            }
        }
        Ok(span.finish())
    }

    /// `span{u·v : u ∈ U, v ∈ V}`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_space(u)?;
        self.check_space(v)?;
        let us = Self::sparse_basis(u);
        let vs = Self::sparse_basis(v);
        let mut span = SpanBuilder::new(self.field, self.dim);
        'outer: for a in &us {
            for b in &vs {
                if span.is_full() {
                    break 'outer;
                }
                span.insert(&self.mul_sparse(a, b));
            }
        }
        Ok(span.finish())
    }

    /// Whether `A·I + I·A ⊆ I`.
    pub fn is_ideal(&self, i: &Subspace) -> bool {
        if i.ambient() != self.dim {
            return false;
        }
        let mut acc = vec![0u64; self.dim];
        for u in Self::sparse_basis(i) {
            for k in 0..self.dim {
                acc.iter_mut().for_each(|a| *a = 0);
                self.mul_basis_left(k, &u, &mut acc);
                if !i.contains(&reduce_acc(&self.field, &acc)) {
                    return false;
                }
                acc.iter_mut().for_each(|a| *a = 0);
                self.mul_basis_right(&u, k, &mut acc);
                if !i.contains(&reduce_acc(&self.field, &acc)) {
                    return false;
                }
            }
        }
        true
    }

    /// Two-sided ideal generated by a subspace.
    pub fn ideal_closure(&self, s: &Subspace) -> Result<Subspace> {
        self.check_space(s)?;
        let mut span = SpanBuilder::new(self.field, self.dim);
        let mut pending: Vec<SparseVec> = Vec::new();
        for r in s.basis() {
            if span.insert(r) {
                pending.push(SparseVec::from_dense(r));
            }
        }
        let mut acc = vec![0u64; self.dim];
        while let Some(v) = pending.pop() {
            if span.is_full() {
                break;
            }
            for k in 0..self.dim {
                for side in 0..2 {
                    acc.iter_mut().for_each(|a| *a = 0);
                    if side == 0 {
                        self.mul_basis_left(k, &v, &mut acc);
                    } else {
                        self.mul_basis_right(&v, k, &mut acc);
                    }
                    let w = reduce_acc(&self.field, &acc);
                    if span.insert(&w) {
                        pending.push(SparseVec::from_dense(&w));
                    }
                }
            }
        }
        Ok(span.finish())
    }

    /// Powers of a multiplicatively closed subspace `s` (`s·s ⊆ s`) without
    /// requiring it to be an ideal of the whole algebra; subalgebra-relative
    /// chains use this.
    pub fn power_chain(&self, s: &Subspace) -> Result<IdealChain> {
        self.check_space(s)?;
        let mut powers = vec![s.clone()];
        loop {
            let last = powers.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.subspace_product(last, s)?;
            if !next.is_subspace_of(last) {
                return Err(Error::Precondition("subspace is not closed under multiplication".into()));
            }
            if &next == last {
                break;
            }
            powers.push(next);
        }
        let nilpotent = powers.last().unwrap().is_zero();
        let index = if nilpotent { Some(powers.len()) } else { None };
        Ok(IdealChain { ideal: s.clone(), powers, nilpotent, index })
    }

    /// `I ⊇ I² ⊇ …` until stabilization; `I` must be a two-sided ideal.
    pub fn ideal_power_chain(&self, i: &Subspace) -> Result<IdealChain> {
        if !self.is_ideal(i) {
            return Err(Error::NotAnIdeal);
        }
        self.power_chain(i)
    }

    /// Matrix of the Frobenius map `a ↦ a^p`, which is GF(p)-linear on a
    /// commutative algebra of characteristic `p`.
    pub fn frobenius_matrix(&self) -> Result<Matrix> {
        if !self.is_commutative() {
            return Err(Error::NonCommutative);
        }
        let p = self.field.p() as u64;
        let cols: Result<Vec<Vector>> =
            (0..self.dim).map(|i| self.pow(&basis_vector(self.dim, i), p)).collect();
        Matrix::from_columns(self.field, self.dim, &cols?)
    }

    /// Image of `a ↦ a^{p^k}` on a commutative algebra.
    pub fn frobenius_image(&self, k: u32) -> Result<Subspace> {
        let fr = self.frobenius_matrix()?.pow(k as u64)?;
        Ok(fr.image())
    }

    /// Exhaustive check that `(e_i + e_j)^p = e_i^p + e_j^p` on basis pairs.
    pub fn frobenius_additive_on_basis(&self) -> Result<bool> {
        let p = self.field.p() as u64;
        let n = self.dim;
        let powers: Vec<Vector> = (0..n).map(|i| self.pow(&basis_vector(n, i), p)).collect::<Result<_>>()?;
        for i in 0..n {
            for j in i + 1..n {
                let mut s = basis_vector(n, i);
                s[j] = 1;
                let lhs = self.pow(&s, p)?;
                let mut rhs = powers[i].clone();
                self.field.axpy(&mut rhs, 1, &powers[j]);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Jacobson radical of a commutative algebra: the kernel of
    /// `a ↦ a^{p^m}` with `p^m ≥ dim`, i.e. the nilradical.
    pub fn commutative_radical(&self) -> Result<Subspace> {
        let m = self.field.frobenius_exponent(self.dim);
        let fr = self.frobenius_matrix()?.pow(m as u64)?;
        Ok(fr.kernel())
    }

    /// Lift `a` with `a² − a` nilpotent to the idempotent `a^{p^m}`.
    pub fn lift_idempotent(&self, a: &[u32]) -> Result<Vector> {
        self.check_len(a)?;
        let radical = self.commutative_radical()?;
        let sq = self.multiply(a, a)?;
        let mut defect = sq;
        for (d, &x) in defect.iter_mut().zip(a) {
            *d = self.field.sub(*d, x);
        }
        if !radical.contains(&defect) {
            return Err(Error::Precondition("a^2 - a is not nilpotent".into()));
        }
        let m = self.field.frobenius_exponent(self.dim);
        let fr = self.frobenius_matrix()?.pow(m as u64)?;
        Ok(fr.apply(a))
    }

    /// Quotient by a two-sided ideal. The quotient basis is the image of
    /// the non-pivot coordinate vectors of the ideal's canonical basis.
    /// Returns the quotient and the projection matrix.
    pub fn quotient_algebra(&self, i: &Subspace) -> Result<(Algebra, Matrix)> {
        if !self.is_ideal(i) {
            return Err(Error::NotAnIdeal);
        }
        let q = Quotient::new(i);
        let m = q.dim();
        let mut mult = Vec::with_capacity(m * m);
        for &a in &q.complement {
            for &b in &q.complement {
                mult.push(q.project_sparse(self.mul_basis(a, b)));
            }
        }
        let unit = q.project(&self.unit);
        Ok((Algebra::new(self.field, m, mult, unit)?, q.matrix()))
    }
}

/// Projection onto `V / I` in the standard complement coordinates.
pub(crate) struct Quotient<'a> {
    ideal: &'a Subspace,
    pub complement: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl<'a> Quotient<'a> {
    pub fn new(ideal: &'a Subspace) -> Self {
        let complement = ideal.non_pivots();
        let mut position = vec![None; ideal.ambient()];
        for (r, &c) in complement.iter().enumerate() {
            position[c] = Some(r);
        }
        Quotient { ideal, complement, position }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn project(&self, v: &[u32]) -> Vector {
        let r = self.ideal.residual(v);
        self.complement.iter().map(|&c| r[c]).collect()
    }

    pub fn project_sparse(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_dense(&self.project(&v.to_dense(self.ideal.ambient())))
    }

    /// Images of the basis vectors, sparse.
    pub fn basis_images(&self) -> Vec<SparseVec> {
        let n = self.ideal.ambient();
        (0..n)
            .map(|j| match self.position[j] {
                // non-pivot basis vectors are only altered in pivot slots
                Some(r) => SparseVec::unit(r),
                None => SparseVec::from_dense(&self.project(&basis_vector(n, j))),
            })
            .collect()
    }

    pub fn matrix(&self) -> Matrix {
        let n = self.ideal.ambient();
        let cols: Vec<Vector> = (0..n).map(|j| self.project(&basis_vector(n, j))).collect();
        Matrix::from_columns(self.ideal.field(), self.dim(), &cols).expect("projection shape")
    }
}
