//! Locality of Hopf algebras and the checkers built on it: the `H₁`
//! criterion for cocommutative Hopf algebras, the primitive-element
//! criterion for connected ones, the pointed decomposition, heredity to
//! subalgebras, and a combined analysis report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::{Field, Subspace, Vector};
use crate::hopf::HopfAlgebra;
use crate::report::VerificationReport;
use crate::series::{lower_power_series, upper_from_filtration, verify_duality};
use crate::structure::{
    coradical_filtration_dual, coradical_filtration_direct, group_likes, identity_component, is_connected,
    primitives, FiltrationChain, PrimitiveSpace,
};

/// Default cap on the number of primitive elements enumerated.
pub const ENUMERATION_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityVerdict {
    pub is_local: bool,
    pub nilpotency_index: Option<usize>,
    /// `dim (H⁺)^k` for `k = 1, 2, …` up to stabilization.
    pub chain_dims: Vec<usize>,
}

/// `H` is local iff `H⁺` is nilpotent.
pub fn is_local(h: &HopfAlgebra) -> LocalityVerdict {
    let chain = h.algebra().ideal_power_chain(&h.augmentation_ideal()).expect("augmentation ideal is an ideal");
    LocalityVerdict { is_local: chain.nilpotent, nilpotency_index: chain.index, chain_dims: chain.dims() }
}

/// Locality of a subalgebra `S` of `H`: nilpotency of `S ∩ H⁺`.
pub fn is_local_subalgebra(h: &HopfAlgebra, s: &Subspace) -> Result<LocalityVerdict> {
    let chain = h.algebra().power_chain(&h.augmentation_part(s)?)?;
    Ok(LocalityVerdict { is_local: chain.nilpotent, nilpotency_index: chain.index, chain_dims: chain.dims() })
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub dim: usize,
    pub h1_dim: usize,
    pub gamma1_dim: usize,
    pub h_local: LocalityVerdict,
    pub gamma1_local: LocalityVerdict,
    pub cocommutative: bool,
    pub equivalence_holds: bool,
    /// Non-cocommutative and the two verdicts differ.
    pub counterexample_flag: bool,
}

impl TheoremAReport {
    /// The equivalence is asserted only under cocommutativity; otherwise
    /// it is reported.
    pub fn to_report(&self) -> VerificationReport {
        let mut r = VerificationReport::new(format!("locality of H versus the subalgebra generated by H_1, dim {}", self.dim));
        let witness = || format!("H local: {}, G^1 local: {}", self.h_local.is_local, self.gamma1_local.is_local);
        if self.cocommutative {
            r.record("H local <=> G^1 local", self.equivalence_holds, witness);
        } else {
            r.skip(
                "H local <=> G^1 local",
                format!("not cocommutative; {}{}", witness(), if self.counterexample_flag { "; counterexample" } else { "" }),
            );
        }
        r
    }
}

fn first_term_and_gamma1(h: &HopfAlgebra, filt: &FiltrationChain) -> Result<(usize, Subspace)> {
    let h1 = filt.term(1);
    let gamma1 = h.algebra().generated_subalgebra(h1.basis(), true)?;
    Ok((h1.dim(), gamma1))
}

pub fn theorem_a_check(h: &HopfAlgebra) -> Result<TheoremAReport> {
    h.require_verified()?;
    let filt = coradical_filtration_dual(h)?;
    let (h1_dim, gamma1) = first_term_and_gamma1(h, &filt)?;
    let handle = h.hopf_subalgebra(&gamma1)?;
    let h_local = is_local(h);
    let gamma1_local = is_local(&handle.hopf);
    let cocommutative = h.is_cocommutative();
    let equivalence_holds = h_local.is_local == gamma1_local.is_local;
    Ok(TheoremAReport {
        dim: h.dim(),
        h1_dim,
        gamma1_dim: gamma1.dim(),
        h_local,
        gamma1_local,
        cocommutative,
        equivalence_holds,
        counterexample_flag: !cocommutative && !equivalence_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmapChain {
    /// Length of `x, x^[p], x^[p²], …` before reaching zero or a repeat.
    pub length: usize,
    pub reaches_zero: bool,
}

/// Data behind the Engel step: the lower central series of the primitive
/// Lie algebra and the p-map orbits of its basis.
#[derive(Clone, Debug, Serialize)]
pub struct EngelCertificate {
    pub lcs_dims: Vec<usize>,
    pub lcs_reaches_zero: bool,
    pub pmap_chains: Vec<PmapChain>,
    /// `None` when the primitive space exceeds the enumeration budget.
    pub all_elements_nilpotent: Option<bool>,
}

fn bracket_of(prim: &PrimitiveSpace, f: Field, a: &[u32], b: &[u32]) -> Vector {
    let d = prim.dim();
    let mut out = vec![0; d];
    for (i, &ai) in a.iter().enumerate().filter(|e| *e.1 != 0) {
        for (j, &bj) in b.iter().enumerate().filter(|e| *e.1 != 0) {
            f.axpy(&mut out, f.mul(ai, bj), &prim.bracket[i][j]);
        }
    }
    out
}

fn engel_certificate(h: &HopfAlgebra, prim: &PrimitiveSpace, budget: u64) -> Result<(EngelCertificate, Option<Vector>)> {
    let f = h.field();
    let d = prim.dim();
    let full = Subspace::full(f, d);
    let mut lcs = vec![full.clone()];
    loop {
        let last = lcs.last().unwrap();
        let next = Subspace::span(
            f,
            d,
            full.basis().iter().flat_map(|a| last.basis().iter().map(move |b| (a, b))).map(|(a, b)| bracket_of(prim, f, a, b)),
        );
        if &next == last {
            break;
        }
        let zero = next.is_zero();
        lcs.push(next);
        if zero {
            break;
        }
    }
    let lcs_reaches_zero = lcs.last().unwrap().is_zero();
    let pmap_chains = (0..d).map(|i| pmap_chain_in_h(h, prim, i)).collect::<Result<Vec<_>>>()?;
    let (all, witness) = enumerate_nilpotent(h, prim, budget);
    Ok((
        EngelCertificate { lcs_dims: lcs.iter().map(Subspace::dim).collect(), lcs_reaches_zero, pmap_chains, all_elements_nilpotent: all },
        witness,
    ))
}

/// `x, x^p, x^{p²}, …` computed in `H` for the basis element `v_i`.
fn pmap_chain_in_h(h: &HopfAlgebra, prim: &PrimitiveSpace, i: usize) -> Result<PmapChain> {
    let p = h.field().p() as u64;
    let mut seen: Vec<Vector> = Vec::new();
    let mut cur = prim.basis()[i].clone();
    loop {
        if cur.iter().all(|&c| c == 0) {
            return Ok(PmapChain { length: seen.len(), reaches_zero: true });
        }
        if seen.contains(&cur) {
            return Ok(PmapChain { length: seen.len(), reaches_zero: false });
        }
        seen.push(cur.clone());
        cur = h.algebra().pow(&cur, p)?;
    }
}

/// Enumerate the primitive space when it fits the budget; returns whether
/// every element is nilpotent and the first non-nilpotent one in
/// enumeration order.
fn enumerate_nilpotent(h: &HopfAlgebra, prim: &PrimitiveSpace, budget: u64) -> (Option<bool>, Option<Vector>) {
    let p = h.field().p() as u64;
    let d = prim.dim() as u32;
    let total = match p.checked_pow(d) {
        Some(t) if t <= budget => t,
        _ => return (None, None),
    };
    let space = &prim.space;
    let witness = (1..total).into_par_iter().find_map_first(|mut idx| {
        let coords: Vector = (0..d)
            .map(|_| {
                let c = (idx % p) as u32;
                idx /= p;
                c
            })
            .collect();
        let v = space.combine(&coords);
        match h.algebra().is_nilpotent_element(&v) {
            Ok(true) => None,
            _ => Some(v),
        }
    });
    (Some(witness.is_none()), witness)
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryBReport {
    pub primitive_dim: usize,
    pub h_local: bool,
    pub u_local: bool,
    /// `None` when enumeration exceeded the budget.
    pub primitives_nilpotent: Option<bool>,
    pub cocommutative: bool,
    pub engel: EngelCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_nilpotent_witness: Option<Vector>,
    pub report: VerificationReport,
}

pub fn corollary_b_check(h: &HopfAlgebra) -> Result<CorollaryBReport> {
    corollary_b_check_with_budget(h, ENUMERATION_BUDGET)
}

/// Statements (i) `H` local, (ii) `u(𝔤)` local, (iii) every primitive
/// nilpotent, for connected `H`. (ii) ⟺ (iii) is asserted always; (i) ⟺
/// (ii) is asserted for cocommutative `H` and reported otherwise.
pub fn corollary_b_check_with_budget(h: &HopfAlgebra, budget: u64) -> Result<CorollaryBReport> {
    h.require_verified()?;
    if !is_connected(h) {
        return Err(Error::Precondition("Hopf algebra is not connected".into()));
    }
    let prim = primitives(h)?;
    let mut gens: Vec<Vector> = prim.basis().to_vec();
    gens.push(h.unit().to_vec());
    let u = h.algebra().generated_subalgebra(&gens, true)?;
    let handle = h.hopf_subalgebra(&u)?;
    let h_local = is_local(h).is_local;
    let u_local = is_local(&handle.hopf).is_local;
    let (engel, witness) = engel_certificate(h, &prim, budget)?;
    let cocommutative = h.is_cocommutative();

    let mut report = VerificationReport::new(format!("primitive-element locality criterion, dim {}", h.dim()));
    let states = || {
        let iii = match engel.all_elements_nilpotent {
            Some(b) => b.to_string(),
            None => "unknown".into(),
        };
        format!("(i) {h_local}, (ii) {u_local}, (iii) {iii}")
    };
    if cocommutative {
        report.record("(i) <=> (ii)", h_local == u_local, states);
    } else {
        report.skip("(i) <=> (ii)", format!("not cocommutative; {}", states()));
    }
    match engel.all_elements_nilpotent {
        Some(all) => {
            report.record("(ii) <=> (iii)", all == u_local, || match &witness {
                Some(w) => format!("{}; non-nilpotent primitive {w:?}", states()),
                None => states(),
            });
        }
        None => report.skip("(ii) <=> (iii)", format!("primitive space exceeds enumeration budget {budget}; (iii) taken from (ii)")),
    }
    let engel_ok = engel.lcs_reaches_zero && engel.pmap_chains.iter().all(|c| c.reaches_zero);
    if engel_ok {
        report.record("Engel data => (ii)", u_local, states);
    }
    Ok(CorollaryBReport {
        primitive_dim: prim.dim(),
        h_local,
        u_local,
        primitives_nilpotent: engel.all_elements_nilpotent,
        cocommutative,
        engel,
        non_nilpotent_witness: witness,
        report,
    })
}

/// For pointed cocommutative `H` with all group-likes rational: `H` is
/// local iff `H_e` and `k[G]` are, `dim H = dim H_e · |G|`, and
/// `H/H·H_e⁺` has dimension `|G|` and `|G|` group-likes.
pub fn pointed_decomposition_check(h: &HopfAlgebra) -> Result<VerificationReport> {
    h.require_verified()?;
    if !h.is_cocommutative() {
        return Err(Error::Precondition("Hopf algebra is not cocommutative".into()));
    }
    let gl = group_likes(h)?;
    let he = identity_component(h)?;
    let order = gl.len();
    let kg_space = gl.span(h.field(), h.dim());
    let kg = h.hopf_subalgebra(&kg_space)?;
    let mut r = VerificationReport::new(format!("pointed decomposition, dim {}", h.dim()));
    let (hl, el, gl_local) = (is_local(h).is_local, is_local(&he.hopf).is_local, is_local(&kg.hopf).is_local);
    r.record("H local <=> H_e and k[G] local", hl == (el && gl_local), || {
        format!("H {hl}, H_e {el}, k[G] {gl_local}")
    });
    r.record("dim H = dim H_e * |G|", h.dim() == he.dim() * order, || {
        format!("{} != {} * {order}", h.dim(), he.dim())
    });
    r.record("H_e connected", is_connected(&he.hopf), || "H_e has a larger coradical".into());
    r.record("H_e normal", h.is_normal_hopf_subalgebra(&he.space), || {
        h.normality_witness(&he.space).unwrap_or_default()
    });
    let (q, _) = h.quotient_hopf(&he.space)?;
    let qg = group_likes(&q)?;
    r.record("H/H H_e^+ has dim |G| and |G| group-likes", q.dim() == order && qg.len() == order && qg.complete, || {
        format!("quotient dim {}, {} group-likes", q.dim(), qg.len())
    });
    Ok(r)
}

/// Random subalgebras of a local `H` (1 to 3 random generators in `H⁺`)
/// are local.
pub fn subalgebra_locality_check(h: &HopfAlgebra, trials: usize, seed: u64) -> Result<VerificationReport> {
    h.require_verified()?;
    if !is_local(h).is_local {
        return Err(Error::Precondition("Hopf algebra is not local".into()));
    }
    let f = h.field();
    let aug = h.augmentation_ideal();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = VerificationReport::new(format!("subalgebras of a local Hopf algebra, {trials} trials, seed {seed}"));
    let mut bad = Vec::new();
    for t in 0..trials {
        let k = rng.gen_range(1..=3);
        let gens: Vec<Vector> = (0..k)
            .map(|_| {
                let coords: Vector = (0..aug.dim()).map(|_| rng.gen_range(0..f.p())).collect();
                aug.combine(&coords)
            })
            .collect();
        let s = h.algebra().generated_subalgebra(&gens, true)?;
        if !is_local_subalgebra(h, &s)?.is_local {
            bad.push(format!("trial {t}: subalgebra of dim {}", s.dim()));
        }
    }
    r.record("every sampled subalgebra is local", bad.is_empty(), || bad.join("; "));
    Ok(r)
}

/// One analysis, either computed or skipped with a reason.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Done(T),
    Skipped { skipped: String },
}

impl<T> Section<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Section::Done(v),
            Err(e) => Section::Skipped { skipped: e.to_string() },
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Section::Skipped { skipped: reason.into() }
    }

    pub fn done(&self) -> Option<&T> {
        match self {
            Section::Done(v) => Some(v),
            Section::Skipped { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoradicalSummary {
    pub dims: Vec<usize>,
    pub methods_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupLikeSummary {
    pub count: usize,
    pub complete: bool,
    pub coradical_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub schema: &'static str,
    pub subject: String,
    pub p: u32,
    pub dim: usize,
    pub commutative: bool,
    pub cocommutative: bool,
    pub connected: bool,
    pub locality: LocalityVerdict,
    pub coradical: Section<CoradicalSummary>,
    pub primitive_dim: Section<usize>,
    pub group_likes: Section<GroupLikeSummary>,
    pub theorem_a: Section<TheoremAReport>,
    pub corollary_b: Section<CorollaryBReport>,
    pub upper_series: Section<Vec<usize>>,
    pub lower_series: Section<Vec<usize>>,
    pub duality: Section<VerificationReport>,
    pub pointed: Section<VerificationReport>,
}

pub const REPORT_SCHEMA: &str = "hopflab-report/1";

impl Analysis {
    /// Reports whose failure is a broken statement (not a skip).
    pub fn failed_checks(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut scan = |name: &str, r: Option<&VerificationReport>| {
            if let Some(r) = r {
                for c in r.failures() {
                    out.push(format!("{name}: {}", c.name));
                }
            }
        };
        scan("theorem A", self.theorem_a.done().map(|t| t.to_report()).as_ref());
        scan("corollary B", self.corollary_b.done().map(|c| &c.report));
        scan("duality", self.duality.done());
        scan("pointed", self.pointed.done());
        if let Some(c) = self.coradical.done() {
            if !c.methods_agree {
                out.push("coradical: methods disagree".into());
            }
        }
        out
    }

    pub fn skipped(&self) -> Vec<(&'static str, &str)> {
        fn reason<T>(s: &Section<T>) -> Option<&str> {
            match s {
                Section::Skipped { skipped } => Some(skipped),
                Section::Done(_) => None,
            }
        }
        let sections: [(&'static str, Option<&str>); 9] = [
            ("coradical", reason(&self.coradical)),
            ("primitives", reason(&self.primitive_dim)),
            ("group-likes", reason(&self.group_likes)),
            ("theorem-a", reason(&self.theorem_a)),
            ("corollary-b", reason(&self.corollary_b)),
            ("upper series", reason(&self.upper_series)),
            ("lower series", reason(&self.lower_series)),
            ("duality", reason(&self.duality)),
            ("pointed", reason(&self.pointed)),
        ];
        sections.into_iter().filter_map(|(n, r)| r.map(|r| (n, r))).collect()
    }
}

/// Everything the library can say about `H`; analyses whose hypotheses fail
/// are marked skipped.
pub fn analyze(h: &HopfAlgebra) -> Result<Analysis> {
    h.require_verified()?;
    let connected = is_connected(h);
    let cocommutative = h.is_cocommutative();
    let commutative = h.is_commutative();
    let filt = coradical_filtration_dual(h);
    let coradical = match &filt {
        Ok(fc) => Section::from_result(
            coradical_filtration_direct(h, &fc.terms[0])
                .map(|direct| CoradicalSummary { dims: fc.dims(), methods_agree: direct.same_terms(fc) }),
        ),
        Err(e) => Section::skipped(e.to_string()),
    };
    let upper_series = match (&filt, cocommutative) {
        (Ok(fc), true) => Section::from_result(upper_from_filtration(h, fc).map(|s| s.dims())),
        (Err(e), true) => Section::skipped(e.to_string()),
        (_, false) => Section::skipped("not cocommutative"),
    };
    let lower_series = if commutative {
        Section::from_result(lower_power_series(h).map(|s| s.dims()))
    } else {
        Section::skipped("not commutative")
    };
    let duality = if connected && cocommutative {
        Section::from_result(verify_duality(h))
    } else {
        Section::skipped("needs a connected cocommutative Hopf algebra")
    };
    let group_likes_r = group_likes(h);
    let pointed = match (&group_likes_r, cocommutative, connected) {
        (_, false, _) => Section::skipped("not cocommutative"),
        (Ok(g), true, _) if !g.complete => Section::skipped(format!(
            "group-likes span {} of {} coradical dimensions over GF({})",
            g.len(),
            g.coradical_dim,
            h.field().p()
        )),
        (Err(e), _, _) => Section::skipped(e.to_string()),
        _ => Section::from_result(pointed_decomposition_check(h)),
    };
    Ok(Analysis {
        schema: REPORT_SCHEMA,
        subject: h.meta().to_string(),
        p: h.field().p(),
        dim: h.dim(),
        commutative,
        cocommutative,
        connected,
        locality: is_local(h),
        coradical,
        primitive_dim: Section::from_result(primitives(h).map(|p| p.dim())),
        group_likes: Section::from_result(group_likes_r.map(|g| GroupLikeSummary {
            count: g.len(),
            complete: g.complete,
            coradical_dim: g.coradical_dim,
        })),
        theorem_a: Section::from_result(theorem_a_check(h)),
        corollary_b: if connected { Section::from_result(corollary_b_check(h)) } else { Section::skipped("not connected") },
        upper_series,
        lower_series,
        duality,
        pointed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn locality_examples() {
        let k = cyclic_group(gf(5), 1).unwrap();
        assert_eq!(is_local(&k), LocalityVerdict { is_local: true, nilpotency_index: Some(1), chain_dims: vec![0] });
        assert!(is_local(&cyclic_group(gf(3), 3).unwrap()).is_local);
        assert!(!is_local(&cyclic_group(gf(2), 3).unwrap()).is_local);
        assert!(!is_local(&example_b(gf(2), 0).unwrap()).is_local);
    }

    #[test]
    fn theorem_a_examples() {
        for h in [heisenberg(gf(3)).unwrap(), smash_demo().unwrap(), cyclic_group(gf(2), 4).unwrap()] {
            let r = theorem_a_check(&h).unwrap();
            assert!(r.cocommutative && r.equivalence_holds);
        }
        let demo = theorem_a_check(&smash_demo().unwrap()).unwrap();
        assert!(!demo.h_local.is_local && !demo.gamma1_local.is_local);
        let a = theorem_a_check(&example_a(gf(3), 0, 1, 0).unwrap()).unwrap();
        assert!(a.counterexample_flag);
        assert!(a.gamma1_local.is_local && !a.h_local.is_local);
    }

    #[test]
    fn corollary_b_examples() {
        let heis = corollary_b_check(&heisenberg(gf(3)).unwrap()).unwrap();
        assert!(heis.report.overall, "{}", heis.report);
        assert!(heis.h_local && heis.u_local && heis.primitives_nilpotent == Some(true));
        assert_eq!(heis.engel.lcs_dims, vec![3, 1, 0]);

        let witt = corollary_b_check(&witt_line(gf(3)).unwrap()).unwrap();
        assert!(witt.report.overall);
        assert!(!witt.h_local && !witt.u_local && witt.primitives_nilpotent == Some(false));
        let w = witt.non_nilpotent_witness.unwrap();
        let h = witt_line(gf(3)).unwrap();
        assert_eq!(h.algebra().pow(&w, 3).unwrap(), w);

        let b = corollary_b_check(&example_b(gf(2), 0).unwrap()).unwrap();
        assert!(!b.h_local && b.u_local && b.primitives_nilpotent == Some(true));
        assert!(b.report.overall);
        assert!(b.report.has_skips());

        assert!(matches!(corollary_b_check(&cyclic_group(gf(3), 2).unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn pointed_examples() {
        let demo = smash_demo().unwrap();
        let r = pointed_decomposition_check(&demo).unwrap();
        assert!(r.overall, "{r}");
        assert!(!is_local(&demo).is_local);
        let t = smash_trivial().unwrap();
        let r = pointed_decomposition_check(&t).unwrap();
        assert!(r.overall, "{r}");
        assert!(is_local(&t).is_local);
        let heis = heisenberg(gf(2)).unwrap();
        assert!(pointed_decomposition_check(&heis).unwrap().overall);
    }

    #[test]
    fn subalgebras_of_local_algebras() {
        let heis = heisenberg(gf(3)).unwrap();
        assert!(subalgebra_locality_check(&heis, 20, 7).unwrap().overall);
        assert!(is_local_subalgebra(&heis, &heis.unit_line()).unwrap().is_local);
        assert!(subalgebra_locality_check(&witt_line(gf(2)).unwrap(), 3, 0).is_err());
    }

    #[test]
    fn analysis_marks_skips() {
        let fun = cyclic_group(gf(2), 3).unwrap().dual();
        let a = analyze(&fun).unwrap();
        assert!(!a.connected);
        assert!(matches!(a.pointed, Section::Skipped { .. }));
        let b = analyze(&example_b(gf(2), 0).unwrap()).unwrap();
        assert_eq!(b.dim, 8);
        assert!(!b.cocommutative && !b.locality.is_local);
        assert_eq!(&b.coradical.done().unwrap().dims[..2], &[1, 3]);
        assert!(b.theorem_a.done().unwrap().gamma1_local.is_local);
        assert!(b.failed_checks().is_empty());
        let k = analyze(&cyclic_group(gf(7), 1).unwrap()).unwrap();
        assert!(k.failed_checks().is_empty());
        assert!(k.locality.is_local);
    }
}
