//! PBW rewriting for presentations with degree-≤1 commutation and power
//! rules, and the Hopf algebras built from them.
//!
//! Generators are ordered by declaration. A basis monomial
//! `x_0^{a_0} ⋯ x_{d-1}^{a_{d-1}}` with every `a_i < p` has index
//! `Σ a_i p^i`, so the unit is index 0 and `x_i` is index `p^i`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gfp::{reduce_acc, Field, Matrix, SparseVec, Vector};
use crate::hopf::HopfAlgebra;

/// Largest PBW dimension the builders accept.
pub const MAX_PBW_DIM: usize = 250;

/// `c + Σ c_k x_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: u32,
    pub terms: Vec<(usize, u32)>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: usize, c: u32) -> Self {
        LinearForm { constant: 0, terms: vec![(g, c)] }
    }

    pub fn plus(mut self, g: usize, c: u32) -> Self {
        self.terms.push((g, c));
        self
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.terms.iter().all(|t| t.1 == 0)
    }
}

/// A word in the generators with a coefficient.
pub type Term = (Vec<usize>, u32);

/// One summand `c · u ⊗ v` of a coproduct tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailTerm {
    pub coeff: u32,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Generators and relations of a connected Hopf algebra whose generators
/// are primitive up to a coproduct tail.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    pub generators: Vec<String>,
    /// `[x_j, x_i]` for `j > i`, keyed `(j, i)`; absent pairs commute.
    pub brackets: BTreeMap<(usize, usize), LinearForm>,
    /// `x_i^p`; `None` means `x_i^p = 0`.
    pub powers: Vec<Option<LinearForm>>,
    /// `Δ(x_i) = x_i⊗1 + 1⊗x_i + Σ tails[i]`.
    pub tails: Vec<Vec<TailTerm>>,
    /// `S(x_i)`; `None` means `-x_i`.
    pub antipode: Vec<Option<Vec<Term>>>,
    pub meta: String,
}

impl Presentation {
    /// All generators primitive and commuting, `x_i^p = 0`.
    pub fn free(field: Field, generators: &[&str]) -> Self {
        let d = generators.len();
        Presentation {
            field,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            brackets: BTreeMap::new(),
            powers: vec![None; d],
            tails: vec![Vec::new(); d],
            antipode: vec![None; d],
            meta: String::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `[x_a, x_b] = form`, stored in the `j > i` orientation.
    pub fn set_bracket(&mut self, a: usize, b: usize, form: LinearForm) {
        let f = self.field;
        if a > b {
            self.brackets.insert((a, b), form);
        } else if b > a {
            let neg = LinearForm {
                constant: f.neg(form.constant % f.p()),
                terms: form.terms.iter().map(|&(g, c)| (g, f.neg(c % f.p()))).collect(),
            };
            self.brackets.insert((b, a), neg);
        }
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == label)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.rank();
        let bad = |m: String| Err(Error::InvalidPresentation(m));
        if self.powers.len() != d || self.tails.len() != d || self.antipode.len() != d {
            return bad("per-generator tables must have one entry per generator".into());
        }
        let dim = (self.field.p() as usize).checked_pow(d as u32).unwrap_or(usize::MAX);
        if dim > MAX_PBW_DIM {
            return Err(Error::Unsupported(format!("PBW dimension {dim} exceeds {MAX_PBW_DIM}")));
        }
        let form_ok = |f: &LinearForm| f.terms.iter().all(|&(g, _)| g < d);
        for (&(j, i), form) in &self.brackets {
            if j <= i || j >= d {
                return bad(format!("bracket key ({j}, {i}) must satisfy {d} > j > i"));
            }
            if !form_ok(form) {
                return bad(format!("bracket [{j},{i}] mentions an unknown generator"));
            }
        }
        for form in self.powers.iter().flatten() {
            if !form_ok(form) {
                return bad("power rule mentions an unknown generator".into());
            }
        }
        for (g, tails) in self.tails.iter().enumerate() {
            for t in tails {
                if t.left.len() > 2 || t.right.len() > 2 {
                    return bad(format!("coproduct tail of generator {g} exceeds degree 2"));
                }
                if t.left.iter().chain(&t.right).any(|&x| x >= d) {
                    return bad(format!("coproduct tail of generator {g} mentions an unknown generator"));
                }
            }
        }
        for terms in self.antipode.iter().flatten() {
            if terms.iter().any(|(w, _)| w.iter().any(|&x| x >= d)) {
                return bad("antipode expression mentions an unknown generator".into());
            }
        }
        Ok(())
    }

    pub fn pbw_dim(&self) -> usize {
        (self.field.p() as usize).pow(self.rank() as u32)
    }

    /// Exponent vector of a basis index.
    pub fn exponents(&self, index: usize) -> Vec<usize> {
        pbw_exponents(self.field.p() as usize, self.rank(), index)
    }

    pub fn monomial_label(&self, index: usize) -> String {
        let parts: Vec<String> = self
            .exponents(index)
            .iter()
            .zip(&self.generators)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, g)| if a == 1 { g.clone() } else { format!("{g}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

pub fn pbw_exponents(p: usize, d: usize, mut index: usize) -> Vec<usize> {
    (0..d)
        .map(|_| {
            let a = index % p;
            index /= p;
            a
        })
        .collect()
}

/// Normal-form rewriting with a per-call memo table.
struct Normalizer<'a> {
    pres: &'a Presentation,
    p: usize,
    memo: HashMap<Vec<u8>, SparseVec>,
}

impl<'a> Normalizer<'a> {
    fn new(pres: &'a Presentation) -> Self {
        Normalizer { pres, p: pres.field.p() as usize, memo: HashMap::new() }
    }

    fn normal_form(&mut self, word: &[u8]) -> SparseVec {
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let v = self.rewrite(word);
        self.memo.insert(word.to_vec(), v.clone());
        v
    }

    fn add_form(&mut self, entries: &mut Vec<(u32, u32)>, prefix: &[u8], suffix: &[u8], form: &LinearForm, scale: u32) {
        let f = self.pres.field;
        if !form.constant.is_multiple_of(f.p()) {
            let w: Vec<u8> = prefix.iter().chain(suffix).copied().collect();
            let c = f.mul(scale, form.constant % f.p());
            entries.extend(self.normal_form(&w).iter().map(|(i, x)| (i as u32, f.mul(c, x))));
        }
        for &(g, coeff) in &form.terms {
            if coeff % f.p() == 0 {
                continue;
            }
            let mut w = prefix.to_vec();
            w.push(g as u8);
            w.extend_from_slice(suffix);
            let c = f.mul(scale, coeff % f.p());
            entries.extend(self.normal_form(&w).iter().map(|(i, x)| (i as u32, f.mul(c, x))));
        }
    }

    /// Swap the first descent `x_j x_i → x_i x_j + [x_j, x_i]`, else reduce
    /// the first run of `p` equal letters, else read off the basis index.
    /// Swaps keep the degree and remove one inversion; every correction term
    /// has strictly smaller degree, so this terminates.
    fn rewrite(&mut self, word: &[u8]) -> SparseVec {
        let f = self.pres.field;
        if let Some(k) = word.windows(2).position(|w| w[0] > w[1]) {
            let mut entries: Vec<(u32, u32)> = Vec::new();
            let mut swapped = word.to_vec();
            swapped.swap(k, k + 1);
            entries.extend(self.normal_form(&swapped).entries().iter().copied());
            let key = (word[k] as usize, word[k + 1] as usize);
            if let Some(form) = self.pres.brackets.get(&key) {
                let form = form.clone();
                self.add_form(&mut entries, &word[..k], &word[k + 2..], &form, 1);
            }
            return SparseVec::from_entries(&f, entries);
        }
        let mut start = 0;
        for k in 0..word.len() {
            if k > 0 && word[k] != word[k - 1] {
                start = k;
            }
            if k + 1 - start == self.p {
                let g = word[k] as usize;
                let mut entries = Vec::new();
                if let Some(form) = self.pres.powers[g].clone() {
                    self.add_form(&mut entries, &word[..start], &word[k + 1..], &form, 1);
                }
                return SparseVec::from_entries(&f, entries);
            }
        }
        let mut index = 0;
        let mut place = 1;
        let mut counts = vec![0usize; self.pres.rank()];
        for &g in word {
            counts[g as usize] += 1;
        }
        for c in counts {
            index += c * place;
            place *= self.p;
        }
        SparseVec::unit(index)
    }

    fn word_of(&self, index: usize) -> Vec<u8> {
        let mut w = Vec::new();
        for (g, a) in self.pres.exponents(index).into_iter().enumerate() {
            w.extend(std::iter::repeat_n(g as u8, a));
        }
        w
    }

    fn eval_terms(&mut self, terms: &[Term]) -> SparseVec {
        let f = self.pres.field;
        let mut entries = Vec::new();
        for (w, c) in terms {
            let w: Vec<u8> = w.iter().map(|&g| g as u8).collect();
            let c = *c % f.p();
            entries.extend(self.normal_form(&w).iter().map(|(i, x)| (i as u32, f.mul(c, x))));
        }
        SparseVec::from_entries(&f, entries)
    }
}

/// Product in the tensor-square algebra `H⊗H`.
fn tensor_product(alg: &Algebra, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let n = alg.dim();
    let f = alg.field();
    let mut acc: HashMap<u32, u64> = HashMap::new();
    for (x, cx) in a.iter() {
        let (x1, x2) = (x / n, x % n);
        for (y, cy) in b.iter() {
            let (y1, y2) = (y / n, y % n);
            let c = f.mul(cx, cy);
            let l = alg.mul_basis(x1, y1);
            let r = alg.mul_basis(x2, y2);
            for (u, cu) in l.iter() {
                let cuu = f.mul(c, cu);
                for (v, cv) in r.iter() {
                    *acc.entry((u * n + v) as u32).or_default() += (cuu * cv) as u64;
                }
            }
        }
    }
    let entries = acc.into_iter().map(|(k, v)| (k, f.reduce(v))).collect();
    SparseVec::from_entries(&f, entries)
}

/// Build the structure tensors of a presentation without checking axioms.
/// Use this only to inspect or save faulty data; [`presentation_hopf`]
/// verifies.
pub fn presentation_hopf_unchecked(pres: &Presentation) -> Result<HopfAlgebra> {
    pres.validate()?;
    let f = pres.field;
    let p = f.p() as usize;
    let d = pres.rank();
    let n = pres.pbw_dim();
    let mut norm = Normalizer::new(pres);

    let words: Vec<Vec<u8>> = (0..n).map(|i| norm.word_of(i)).collect();
    let mut mult = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let w: Vec<u8> = words[a].iter().chain(&words[b]).copied().collect();
            mult.push(norm.normal_form(&w));
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let alg = Algebra::new(f, n, mult, unit)?;

    let gen_index = |g: usize| p.pow(g as u32);
    let gen_comult: Vec<SparseVec> = (0..d)
        .map(|g| {
            let x = gen_index(g);
            let mut entries = vec![((x * n) as u32, 1), (x as u32, 1)];
            for t in &pres.tails[g] {
                let l = norm.eval_terms(&[(t.left.clone(), 1)]);
                let r = norm.eval_terms(&[(t.right.clone(), 1)]);
                for (u, cu) in l.iter() {
                    for (v, cv) in r.iter() {
                        entries.push(((u * n + v) as u32, f.mul(t.coeff % f.p(), f.mul(cu, cv))));
                    }
                }
            }
            SparseVec::from_entries(&f, entries)
        })
        .collect();
    let gen_antipode: Vec<SparseVec> = (0..d)
        .map(|g| match &pres.antipode[g] {
            Some(terms) => norm.eval_terms(terms),
            None => SparseVec::from_entries(&f, vec![(gen_index(g) as u32, f.neg(1))]),
        })
        .collect();

    let mut comult: Vec<SparseVec> = Vec::with_capacity(n);
    let mut antipode: Vec<SparseVec> = Vec::with_capacity(n);
    comult.push(SparseVec::unit(0));
    antipode.push(SparseVec::unit(0));
    for m in 1..n {
        let exps = pres.exponents(m);
        let g = (0..d).rev().find(|&g| exps[g] > 0).expect("nonunit monomial");
        let prev = m - gen_index(g);
        comult.push(tensor_product(&alg, &comult[prev], &gen_comult[g]));
        antipode.push(SparseVec::from_dense(&alg.mul_sparse(&gen_antipode[g], &antipode[prev])));
    }
    let mut counit = vec![0; n];
    counit[0] = 1;
    let labels = (0..n).map(|i| pres.monomial_label(i)).collect();
    HopfAlgebra::from_parts(alg, comult, counit, antipode, labels, pres.meta.clone())
}

/// Build and verify the Hopf algebra of a presentation. An axiom failure
/// (an inconsistent relation set) is returned as [`Error::AxiomFailure`]
/// carrying the witness report.
pub fn presentation_hopf(pres: &Presentation) -> Result<HopfAlgebra> {
    presentation_hopf_unchecked(pres)?.into_verified()
}

/// Restricted Lie algebra data: brackets `[x_j, x_i] = Σ c_k x_k` for
/// `j > i` and the p-map `x_i^{[p]} = Σ d_k x_k`, as coefficient vectors.
#[derive(Clone, Debug)]
pub struct RestrictedLieData {
    pub field: Field,
    pub generators: Vec<String>,
    pub bracket: BTreeMap<(usize, usize), Vec<u32>>,
    pub pmap: Vec<Vec<u32>>,
}

impl RestrictedLieData {
    pub fn to_presentation(&self) -> Presentation {
        let labels: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let mut pres = Presentation::free(self.field, &labels);
        let form = |coeffs: &[u32]| LinearForm {
            constant: 0,
            terms: coeffs.iter().enumerate().filter(|e| *e.1 % self.field.p() != 0).map(|(k, &c)| (k, c)).collect(),
        };
        for (&(j, i), coeffs) in &self.bracket {
            let fm = form(coeffs);
            if !fm.is_zero() {
                pres.brackets.insert((j, i), fm);
            }
        }
        for (g, coeffs) in self.pmap.iter().enumerate() {
            let fm = form(coeffs);
            if !fm.is_zero() {
                pres.powers[g] = Some(fm);
            }
        }
        pres.meta = format!("restricted enveloping algebra on {} over {}", self.generators.join(","), self.field);
        pres
    }
}

/// `u(𝔤)` on the PBW basis; all generators primitive. Inconsistent data
/// (failing Jacobi or the p-map identities) surfaces as an axiom failure.
pub fn restricted_enveloping(data: &RestrictedLieData) -> Result<HopfAlgebra> {
    if data.pmap.len() != data.generators.len() {
        return Err(Error::InvalidPresentation("p-map needs one entry per generator".into()));
    }
    presentation_hopf(&data.to_presentation())
}

/// Extend a map on generators of a PBW-built algebra multiplicatively to
/// the whole basis (`ρ(m' x_g) = ρ(m')·ρ(x_g)`). Returns the matrix whose
/// column `m` is `ρ(e_m)`.
pub fn pbw_algebra_map(h: &HopfAlgebra, rank: usize, generator_images: &[Vector]) -> Result<Matrix> {
    let f = h.field();
    let p = f.p() as usize;
    let n = h.dim();
    if p.pow(rank as u32) != n || generator_images.len() != rank {
        return Err(Error::Precondition("algebra is not a PBW algebra of this rank".into()));
    }
    let gens: Vec<SparseVec> = generator_images.iter().map(|v| SparseVec::from_dense(v)).collect();
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    cols.push(h.unit().to_vec());
    for m in 1..n {
        let exps = pbw_exponents(p, rank, m);
        let g = (0..rank).rev().find(|&g| exps[g] > 0).unwrap();
        let prev = SparseVec::from_dense(&cols[m - p.pow(g as u32)]);
        let mut acc = vec![0u64; n];
        h.algebra().mul_acc(&prev, &gens[g], 1, &mut acc);
        cols.push(reduce_acc(&f, &acc));
    }
    Matrix::from_columns(f, n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn truncated_line_from_restricted_data() {
        let f = gf(3);
        let data = RestrictedLieData {
            field: f,
            generators: vec!["t".into()],
            bracket: BTreeMap::new(),
            pmap: vec![vec![0]],
        };
        let h = restricted_enveloping(&data).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(h.multiply(&[0, 0, 1], &[0, 1, 0]).unwrap(), vec![0, 0, 0]);
        // cross-builder agreement with the raw presentation
        let mut pres = Presentation::free(f, &["t"]);
        pres.meta = data.to_presentation().meta;
        assert_eq!(presentation_hopf(&pres).unwrap(), h);
    }

    #[test]
    fn commutation_rule_is_applied() {
        // [y, x] = x in u of the 2-dim nonabelian algebra over GF(2) needs
        // x^[2] = 0, y^[2] = y
        let f = gf(2);
        let mut pres = Presentation::free(f, &["x", "y"]);
        pres.set_bracket(1, 0, LinearForm::generator(0, 1));
        pres.powers[1] = Some(LinearForm::generator(1, 1));
        let h = presentation_hopf(&pres).unwrap();
        // y·x = xy + x
        let y = [0, 0, 1, 0];
        let x = [0, 1, 0, 0];
        assert_eq!(h.multiply(&y, &x).unwrap(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn inconsistent_relations_fail_verification() {
        // [y,x] = x with y^[2] = 0 violates the p-map identity ad(y)^2 = ad(y^[2])
        let f = gf(2);
        let mut pres = Presentation::free(f, &["x", "y"]);
        pres.set_bracket(1, 0, LinearForm::generator(0, 1));
        match presentation_hopf(&pres) {
            Err(Error::AxiomFailure(r)) => assert!(!r.overall),
            other => panic!("expected axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn validation_rejects_bad_tables() {
        let f = gf(2);
        let mut pres = Presentation::free(f, &["x"]);
        pres.tails[0].push(TailTerm { coeff: 1, left: vec![0, 0, 0], right: vec![] });
        assert!(matches!(pres.validate(), Err(Error::InvalidPresentation(_))));
        let big = Presentation::free(gf(7), &["a", "b", "c"]);
        assert!(matches!(big.validate(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn labels_follow_exponents() {
        let pres = Presentation::free(gf(3), &["x", "y"]);
        assert_eq!(pres.monomial_label(0), "1");
        assert_eq!(pres.monomial_label(1), "x");
        assert_eq!(pres.monomial_label(2 + 3), "x^2 y");
    }
}
