//! Hopf algebras given by structure constants.
//!
//! Tensor-square coordinates use the fixed convention `e_j ⊗ e_k ↦ j·n + k`
//! throughout the crate.

mod subalgebra;
mod tensor;

use rayon::prelude::*;

pub use subalgebra::HopfSubalgebra;
pub use tensor::{tensor_index, tensor_span};

use crate::algebra::{Algebra, Quotient};
use crate::error::{Error, Result};
use crate::gfp::{basis_vector, kernel_of_images, Field, Matrix, SparseVec, Subspace, Vector};
use crate::report::{VerificationReport, Witnesses};

/// Hopf algebra `(H, m, u, Δ, ε, S)` on the basis `e_0 … e_{n-1}`.
///
/// `comult[i]` is `Δ(e_i)` in tensor-square coordinates, `counit[i] = ε(e_i)`
/// and `antipode[i] = S(e_i)`. Values built with [`HopfAlgebra::from_parts`]
/// are unverified; analysis operations require a value that passed
/// [`HopfAlgebra::into_verified`] (builders and derived constructions
/// return verified values).
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    alg: Algebra,
    comult: Vec<SparseVec>,
    counit: Vector,
    antipode: Vec<SparseVec>,
    labels: Vec<String>,
    meta: String,
    verified: bool,
}

/// Tensor-level equality; labels, provenance text and the verification flag
/// are ignored.
impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl Eq for HopfAlgebra {}

impl HopfAlgebra {
    pub fn from_parts(
        alg: Algebra,
        comult: Vec<SparseVec>,
        counit: Vector,
        antipode: Vec<SparseVec>,
        labels: Vec<String>,
        meta: impl Into<String>,
    ) -> Result<Self> {
        let n = alg.dim();
        for (what, len) in [("comult", comult.len()), ("counit", counit.len()), ("antipode", antipode.len())] {
            if len != n {
                return Err(Error::Range(format!("{what} has {len} entries, expected {n}")));
            }
        }
        if let Some(bad) = comult.iter().filter_map(SparseVec::max_index).find(|&k| k >= n * n) {
            return Err(Error::Range(format!("comultiplication index {bad} out of range")));
        }
        if let Some(bad) = antipode.iter().filter_map(SparseVec::max_index).find(|&k| k >= n) {
            return Err(Error::Range(format!("antipode index {bad} out of range")));
        }
        let labels = if labels.len() == n { labels } else { (0..n).map(|i| format!("e{i}")).collect() };
        let p = alg.field().p();
        let counit = counit.into_iter().map(|c| c % p).collect();
        Ok(HopfAlgebra { alg, comult, counit, antipode, labels, meta: meta.into(), verified: false })
    }

    /// Run [`verify_axioms`](Self::verify_axioms); on success mark verified.
    pub fn into_verified(mut self) -> Result<Self> {
        if self.verified {
            return Ok(self);
        }
        let report = self.verify_axioms();
        if !report.overall {
            return Err(Error::AxiomFailure(Box::new(report)));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn unit(&self) -> &[u32] {
        self.alg.unit()
    }

    pub fn counit(&self) -> &[u32] {
        &self.counit
    }

    pub fn comult(&self) -> &[SparseVec] {
        &self.comult
    }

    pub fn antipode_images(&self) -> &[SparseVec] {
        &self.antipode
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    pub fn with_meta(mut self, meta: impl Into<String>) -> Self {
        self.meta = meta.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim() {
            self.labels = labels;
        }
        self
    }

    /// Antipode as a matrix; column `i` is `S(e_i)`.
    pub fn antipode_matrix(&self) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = self.antipode.iter().map(|s| s.to_dense(n)).collect();
        Matrix::from_columns(self.field(), n, &cols).expect("antipode shape")
    }

    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Result<Vector> {
        self.alg.multiply(a, b)
    }

    pub fn counit_of(&self, v: &[u32]) -> u32 {
        self.field().dot(&self.counit, v)
    }

    pub fn antipode_of(&self, v: &[u32]) -> Vector {
        let mut acc = vec![0u64; self.dim()];
        for (i, c) in v.iter().enumerate() {
            if *c != 0 {
                self.antipode[i].accumulate(&mut acc, *c);
            }
        }
        crate::gfp::reduce_acc(&self.field(), &acc)
    }

    /// `Δ(v)` as a sparse vector in the tensor square.
    pub fn comultiply(&self, v: &[u32]) -> SparseVec {
        let n = self.dim();
        let mut acc = vec![0u64; n * n];
        for (i, c) in v.iter().enumerate() {
            if *c != 0 {
                self.comult[i].accumulate(&mut acc, *c);
            }
        }
        SparseVec::from_dense(&crate::gfp::reduce_acc(&self.field(), &acc))
    }

    /// Check every Hopf axiom on basis elements, with witnesses.
    pub fn verify_axioms(&self) -> VerificationReport {
        let mut report = VerificationReport::new("Hopf axioms");
        report.absorb("", self.alg.check_associative_unital());
        let n = self.dim();
        let f = self.field();
        let nn = (n * n) as u32;

        // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ in n³ coordinates
        let coassoc: Vec<Option<String>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for (idx, c) in self.comult[i].iter() {
                    let (j, k) = (idx / n, idx % n);
                    for (idx2, c2) in self.comult[j].iter() {
                        lhs.push(((idx2 * n + k) as u32, f.mul(c, c2)));
                    }
                    for (idx2, c2) in self.comult[k].iter() {
                        rhs.push((j as u32 * nn + idx2 as u32, f.mul(c, c2)));
                    }
                }
                let ok = SparseVec::from_entries(&f, lhs) == SparseVec::from_entries(&f, rhs);
                (!ok).then(|| format!("e{i}"))
            })
            .collect();
        collect_witnesses(coassoc).into_report(&mut report, "coassociativity");

        let mut counit_w = Witnesses::default();
        for i in 0..n {
            let mut left = vec![0u64; n];
            let mut right = vec![0u64; n];
            for (idx, c) in self.comult[i].iter() {
                let (j, k) = (idx / n, idx % n);
                left[k] += (c * self.counit[j]) as u64;
                right[j] += (c * self.counit[k]) as u64;
            }
            let e = basis_vector(n, i);
            if crate::gfp::reduce_acc(&f, &left) != e {
                counit_w.push(|| format!("(eps x id)D(e{i}) != e{i}"));
            }
            if crate::gfp::reduce_acc(&f, &right) != e {
                counit_w.push(|| format!("(id x eps)D(e{i}) != e{i}"));
            }
        }
        counit_w.into_report(&mut report, "counit");

        // bialgebra compatibility
        let mut unit_w = Witnesses::default();
        let unit_sq = {
            let mut w = Vec::new();
            for (a, ca) in SparseVec::from_dense(self.unit()).iter() {
                for (b, cb) in SparseVec::from_dense(self.unit()).iter() {
                    w.push(((a * n + b) as u32, f.mul(ca, cb)));
                }
            }
            SparseVec::from_entries(&f, w)
        };
        if self.comultiply(self.unit()) != unit_sq {
            unit_w.push(|| "D(1) != 1 x 1".to_string());
        }
        if self.counit_of(self.unit()) != 1 {
            unit_w.push(|| "eps(1) != 1".to_string());
        }
        unit_w.into_report(&mut report, "unit is grouplike");

        let mult_w: Vec<Vec<String>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                let mut acc = vec![0u64; n * n];
                let mut touched: Vec<usize> = Vec::new();
                for j in 0..n {
                    for &t in &touched {
                        acc[t] = 0;
                    }
                    touched.clear();
                    // Δ(e_i)Δ(e_j)
                    for (ab, c1) in self.comult[i].iter() {
                        let (a, b) = (ab / n, ab % n);
                        for (cd, c2) in self.comult[j].iter() {
                            let (c, d) = (cd / n, cd % n);
                            let coeff = f.mul(c1, c2);
                            let left = self.alg.mul_basis(a, c);
                            let right = self.alg.mul_basis(b, d);
                            for (x, cx) in left.iter() {
                                let cxx = f.mul(coeff, cx);
                                for (y, cy) in right.iter() {
                                    let t = x * n + y;
                                    if acc[t] == 0 {
                                        touched.push(t);
                                    }
                                    acc[t] += (cxx * cy) as u64;
                                }
                            }
                        }
                    }
                    let mut rhs: Vec<(u32, u32)> = touched
                        .iter()
                        .map(|&t| (t as u32, f.reduce(acc[t])))
                        .filter(|e| e.1 != 0)
                        .collect();
                    rhs.sort_unstable();
                    // Δ(e_i e_j)
                    let mut lhs = Vec::new();
                    for (k, c) in self.alg.mul_basis(i, j).iter() {
                        for (t, ct) in self.comult[k].iter() {
                            lhs.push((t as u32, f.mul(c, ct)));
                        }
                    }
                    if SparseVec::from_entries(&f, lhs).entries() != rhs.as_slice() {
                        out.push(format!("D(e{i}e{j}) != D(e{i})D(e{j})"));
                    }
                    let eps_prod: u64 = self
                        .alg
                        .mul_basis(i, j)
                        .iter()
                        .map(|(k, c)| (c * self.counit[k]) as u64)
                        .sum();
                    if f.reduce(eps_prod) != f.mul(self.counit[i], self.counit[j]) {
                        out.push(format!("eps(e{i}e{j}) != eps(e{i})eps(e{j})"));
                    }
                }
                out
            })
            .collect();
        let mut comult_hom = Witnesses::default();
        let mut counit_hom = Witnesses::default();
        for w in mult_w.into_iter().flatten() {
            if w.starts_with("eps") {
                counit_hom.push(|| w);
            } else {
                comult_hom.push(|| w);
            }
        }
        comult_hom.into_report(&mut report, "comultiplication is multiplicative");
        counit_hom.into_report(&mut report, "counit is multiplicative");

        let mut anti = Witnesses::default();
        for i in 0..n {
            let mut left = vec![0u64; n];
            let mut right = vec![0u64; n];
            for (idx, c) in self.comult[i].iter() {
                let (a, b) = (idx / n, idx % n);
                let ea = SparseVec::unit(a);
                let eb = SparseVec::unit(b);
                self.alg.mul_acc(&self.antipode[a], &eb, c, &mut left);
                self.alg.mul_acc(&ea, &self.antipode[b], c, &mut right);
            }
            let mut expect = self.unit().to_vec();
            f.scale(&mut expect, self.counit[i]);
            if crate::gfp::reduce_acc(&f, &left) != expect {
                anti.push(|| format!("m(S x id)D(e{i}) != eps(e{i})1"));
            }
            if crate::gfp::reduce_acc(&f, &right) != expect {
                anti.push(|| format!("m(id x S)D(e{i}) != eps(e{i})1"));
            }
        }
        anti.into_report(&mut report, "antipode");
        report
    }

    /// The dual Hopf algebra on the dual basis: multiplication is the
    /// transpose of Δ, comultiplication the transpose of m, unit and counit
    /// swap, and the antipode is transposed.
    pub fn dual(&self) -> HopfAlgebra {
        let n = self.dim();
        let f = self.field();
        let mut mult: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n * n];
        for (k, d) in self.comult.iter().enumerate() {
            for (idx, c) in d.iter() {
                mult[idx].push((k as u32, c));
            }
        }
        let mut comult: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (idx, m) in self.alg.mult_table().iter().enumerate() {
            for (k, c) in m.iter() {
                comult[k].push((idx as u32, c));
            }
        }
        let mut antipode: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (i, s) in self.antipode.iter().enumerate() {
            for (k, c) in s.iter() {
                antipode[k].push((i as u32, c));
            }
        }
        let wrap = |v: Vec<Vec<(u32, u32)>>| v.into_iter().map(SparseVec::from_sorted_unchecked).collect();
        let alg = Algebra::new(f, n, wrap(mult), self.counit.clone()).expect("dual shape");
        let labels = self
            .labels
            .iter()
            .map(|l| match l.strip_suffix('*') {
                Some(base) => base.to_string(),
                None => format!("{l}*"),
            })
            .collect();
        HopfAlgebra {
            alg,
            comult: wrap(comult),
            counit: self.unit().to_vec(),
            antipode: wrap(antipode),
            labels,
            meta: format!("dual of [{}]", self.meta),
            verified: self.verified,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.alg.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        let f = self.field();
        self.comult.iter().all(|d| {
            let flipped: Vec<(u32, u32)> =
                d.iter().map(|(idx, c)| (((idx % n) * n + idx / n) as u32, c)).collect();
            &SparseVec::from_entries(&f, flipped) == d
        })
    }

    /// `H⁺ = ker ε`.
    pub fn augmentation_ideal(&self) -> Subspace {
        let n = self.dim();
        Matrix::from_rows(self.field(), n, std::slice::from_ref(&self.counit)).expect("counit shape").kernel()
    }

    pub fn unit_line(&self) -> Subspace {
        Subspace::span(self.field(), self.dim(), [self.unit()])
    }

    /// `U ∩ H⁺`.
    pub fn augmentation_part(&self, u: &Subspace) -> Result<Subspace> {
        u.intersect(&self.augmentation_ideal())
    }

    /// `{h : Δ(h) ∈ W}` for a subspace `W` of the tensor square.
    pub fn delta_preimage(&self, w: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        if w.ambient() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: w.ambient() });
        }
        let images: Vec<SparseVec> = self
            .comult
            .iter()
            .map(|d| SparseVec::from_dense(&w.residual(&d.to_dense(n * n))))
            .collect();
        Ok(kernel_of_images(self.field(), n * n, &images))
    }

    /// `Δ⁻¹(L⊗H + H⊗R)`, computed as the kernel of `(π_L ⊗ π_R)∘Δ` so the
    /// tensor-square subspace is never materialized.
    pub fn delta_preimage_sum(&self, left: &Subspace, right: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        for s in [left, right] {
            if s.ambient() != n {
                return Err(Error::DimensionMismatch { expected: n, got: s.ambient() });
            }
        }
        let ql = Quotient::new(left);
        let qr = Quotient::new(right);
        let pl = ql.basis_images();
        let pr = qr.basis_images();
        let images = self.tensor_map_images(&pl, &pr, qr.dim());
        Ok(kernel_of_images(self.field(), ql.dim() * qr.dim(), &images))
    }

    /// `(f⊗g)∘Δ` on each basis element, for maps given by sparse images of
    /// the basis; `g` lands in a space of dimension `g_dim`.
    pub(crate) fn tensor_map_images(&self, fmap: &[SparseVec], gmap: &[SparseVec], g_dim: usize) -> Vec<SparseVec> {
        self.comult.iter().map(|d| self.tensor_apply(d, fmap, gmap, g_dim)).collect()
    }

    /// `(f⊗g)(w)` for `w` in the tensor square.
    pub(crate) fn tensor_apply(&self, w: &SparseVec, fmap: &[SparseVec], gmap: &[SparseVec], g_dim: usize) -> SparseVec {
        let n = self.dim();
        let f = self.field();
        let mut entries = Vec::new();
        for (idx, c) in w.iter() {
            let (a, b) = (idx / n, idx % n);
            for (x, cx) in fmap[a].iter() {
                let cxx = f.mul(c, cx);
                for (y, cy) in gmap[b].iter() {
                    entries.push(((x * g_dim + y) as u32, f.mul(cxx, cy)));
                }
            }
        }
        SparseVec::from_entries(&f, entries)
    }

    /// Primitive elements `{h : Δh = h⊗1 + 1⊗h}`.
    pub fn primitive_space(&self) -> Subspace {
        let n = self.dim();
        let f = self.field();
        let unit = SparseVec::from_dense(self.unit());
        let images: Vec<SparseVec> = (0..n)
            .map(|i| {
                let mut entries: Vec<(u32, u32)> = self.comult[i].entries().to_vec();
                for (u, cu) in unit.iter() {
                    entries.push(((i * n + u) as u32, f.neg(cu)));
                    entries.push(((u * n + i) as u32, f.neg(cu)));
                }
                SparseVec::from_entries(&f, entries)
            })
            .collect();
        kernel_of_images(f, n * n, &images)
    }

    /// Unit in `U`, `U·U ⊆ U`, `Δ(U) ⊆ U⊗U` and `S(U) ⊆ U`. The coproduct
    /// condition is tested as `Δ(u) ∈ (U⊗H) ∩ (H⊗U)`, i.e. both
    /// `(π_U⊗id)Δ(u)` and `(id⊗π_U)Δ(u)` vanish.
    pub fn is_hopf_subalgebra(&self, u: &Subspace) -> bool {
        if u.ambient() != self.dim() || !u.contains(self.unit()) {
            return false;
        }
        match self.alg.subspace_product(u, u) {
            Ok(prod) if prod.is_subspace_of(u) => {}
            _ => return false,
        }
        let n = self.dim();
        let q = Quotient::new(u);
        let proj = q.basis_images();
        let ident: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
        u.basis().iter().all(|b| {
            if !u.contains(&self.antipode_of(b)) {
                return false;
            }
            let d = self.comultiply(b);
            self.tensor_apply(&d, &proj, &ident, n).is_zero() && self.tensor_apply(&d, &ident, &proj, q.dim()).is_zero()
        })
    }

    /// Left adjoint `Σ h₁ k S(h₂)` and right adjoint `Σ S(h₁) k h₂` of the
    /// basis element `e_h` on `k`.
    pub(crate) fn adjoint_actions(&self, h: usize, k: &SparseVec) -> (Vector, Vector) {
        let n = self.dim();
        let f = self.field();
        let mut left = vec![0u64; n];
        let mut right = vec![0u64; n];
        for (idx, c) in self.comult[h].iter() {
            let (a, b) = (idx / n, idx % n);
            // e_a · k
            let mut ak = vec![0u64; n];
            self.alg.mul_basis_left(a, k, &mut ak);
            let ak = SparseVec::from_dense(&crate::gfp::reduce_acc(&f, &ak));
            self.alg.mul_acc(&ak, &self.antipode[b], c, &mut left);
            // S(e_a) · k · e_b
            let sak = self.alg.mul_sparse(&self.antipode[a], k);
            let sak = SparseVec::from_dense(&sak);
            let mut tmp = vec![0u64; n];
            self.alg.mul_basis_right(&sak, b, &mut tmp);
            for (r, t) in right.iter_mut().zip(tmp) {
                *r += t * c as u64;
            }
        }
        (crate::gfp::reduce_acc(&f, &left), crate::gfp::reduce_acc(&f, &right))
    }

    /// Both adjoint conditions on all pairs (basis of `H`, basis of `K`).
    /// Returns `false` if `K` is not a Hopf subalgebra.
    pub fn is_normal_hopf_subalgebra(&self, k: &Subspace) -> bool {
        if !self.is_hopf_subalgebra(k) {
            return false;
        }
        self.normality_witness(k).is_none()
    }

    /// First `(h, k)` basis pair violating an adjoint condition.
    pub fn normality_witness(&self, k: &Subspace) -> Option<String> {
        let ks: Vec<SparseVec> = k.basis().iter().map(|r| SparseVec::from_dense(r)).collect();
        (0..self.dim())
            .into_par_iter()
            .find_map_first(|h| {
                ks.iter().enumerate().find_map(|(r, kv)| {
                    let (l, rt) = self.adjoint_actions(h, kv);
                    if !k.contains(&l) {
                        Some(format!("left adjoint of e{h} on basis vector {r} leaves K"))
                    } else if !k.contains(&rt) {
                        Some(format!("right adjoint of e{h} on basis vector {r} leaves K"))
                    } else {
                        None
                    }
                })
            })
    }

    /// Quotient by a Hopf ideal, on the standard complement basis.
    /// Returns the unverified quotient and the projection.
    pub(crate) fn quotient_by_ideal(&self, ideal: &Subspace) -> Result<(HopfAlgebra, Matrix)> {
        let (alg, proj) = self.alg.quotient_algebra(ideal)?;
        let q = Quotient::new(ideal);
        let images = q.basis_images();
        let m = q.dim();
        let all = self.tensor_map_images(&images, &images, m);
        let comult = q.complement.iter().map(|&c| all[c].clone()).collect();
        let counit = q.complement.iter().map(|&c| self.counit[c]).collect();
        let antipode = q.complement.iter().map(|&c| q.project_sparse(&self.antipode[c])).collect();
        let labels = q.complement.iter().map(|&c| format!("[{}]", self.labels[c])).collect();
        let h = HopfAlgebra::from_parts(alg, comult, counit, antipode, labels, format!("quotient of [{}]", self.meta))?;
        Ok((h, proj))
    }

    /// `H/K := H/HK⁺` for a normal Hopf subalgebra `K`. The ideal is
    /// computed as the two-sided closure of `K⁺`. Checks
    /// `dim(H/K) = dim H / dim K` and verifies the result.
    pub fn quotient_hopf(&self, k: &Subspace) -> Result<(HopfAlgebra, Matrix)> {
        self.require_verified()?;
        if !self.is_normal_hopf_subalgebra(k) {
            return Err(Error::NotNormal);
        }
        let kplus = self.augmentation_part(k)?;
        let left = self.alg.subspace_product(&Subspace::full(self.field(), self.dim()), &kplus)?;
        let ideal = self.alg.ideal_closure(&left)?;
        let (q, proj) = self.quotient_by_ideal(&ideal)?;
        if q.dim() * k.dim() != self.dim() {
            return Err(Error::Precondition(format!(
                "dim(H/K) = {} but dim H / dim K = {}/{}",
                q.dim(),
                self.dim(),
                k.dim()
            )));
        }
        Ok((q.into_verified()?, proj))
    }
}

fn collect_witnesses(items: Vec<Option<String>>) -> Witnesses {
    let mut w = Witnesses::default();
    for item in items.into_iter().flatten() {
        w.push(|| item);
    }
    w
}
