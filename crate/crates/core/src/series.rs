//! Upper and lower power series and checks of the statements relating them:
//! the duality between `Γⁿ(H)` and `Γₙ(H*)`, the radical lemmas for the dual
//! of a connected cocommutative `H`, factor dimensions and locality of
//! factors, and the dimension inequality for connected Hopf subalgebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::Subspace;
use crate::hopf::HopfAlgebra;
use crate::locality::is_local;
use crate::report::VerificationReport;
use crate::structure::{coradical_filtration_dual, is_connected, FiltrationChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Upper,
    Lower,
}

/// `terms[n]` is `Γⁿ` (upper) or `Γₙ` (lower). The list ends at the first
/// term equal to its successor, whose index is `stabilized_at`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized_at: usize,
}

impl SeriesChain {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn term(&self, n: usize) -> &Subspace {
        &self.terms[n.min(self.terms.len() - 1)]
    }
}

/// `Γₙ(K) = {a^{pⁿ}}` for commutative `K`. Every term is checked to be a
/// normal Hopf subalgebra.
pub fn lower_power_series(k: &HopfAlgebra) -> Result<SeriesChain> {
    k.require_verified()?;
    let fr = k.algebra().frobenius_matrix()?;
    let mut terms = vec![Subspace::full(k.field(), k.dim())];
    loop {
        let next = terms.last().unwrap().map(&fr)?;
        if &next == terms.last().unwrap() {
            break;
        }
        terms.push(next);
    }
    for t in &terms {
        if !k.is_hopf_subalgebra(t) {
            return Err(Error::NotHopfSubalgebra);
        }
        if !k.is_normal_hopf_subalgebra(t) {
            return Err(Error::NotNormal);
        }
    }
    let stabilized_at = terms.len() - 1;
    Ok(SeriesChain { kind: SeriesKind::Lower, terms, stabilized_at })
}

/// `Γ⁰ = k`, `Γⁿ = k⟨H_{p^{n-1}}⟩`, for `H` whose coradical filtration is
/// computable. Every term is checked to be a Hopf subalgebra.
pub fn upper_power_series(h: &HopfAlgebra) -> Result<SeriesChain> {
    let filt = coradical_filtration_dual(h)?;
    upper_from_filtration(h, &filt)
}

pub fn upper_from_filtration(h: &HopfAlgebra, filt: &FiltrationChain) -> Result<SeriesChain> {
    let p = h.field().p() as usize;
    let mut terms = vec![h.unit_line()];
    let mut level = 1usize;
    loop {
        let gens = filt.term(level).basis().to_vec();
        let next = h.algebra().generated_subalgebra(&gens, true)?;
        if !h.is_hopf_subalgebra(&next) {
            return Err(Error::NotHopfSubalgebra);
        }
        let full = next.is_full();
        terms.push(next);
        if full {
            break;
        }
        level = level.saturating_mul(p);
    }
    // stabilization index: first n with Γⁿ = Γⁿ⁺¹; the last term is H and
    // any earlier repeat is kept so levels stay aligned with n
    let stabilized_at = (0..terms.len() - 1).find(|&n| terms[n] == terms[n + 1]).unwrap_or(terms.len() - 1);
    Ok(SeriesChain { kind: SeriesKind::Upper, terms, stabilized_at })
}

fn require_connected_cocommutative(h: &HopfAlgebra) -> Result<()> {
    h.require_verified()?;
    if !h.is_cocommutative() {
        return Err(Error::Precondition("Hopf algebra is not cocommutative".into()));
    }
    if !is_connected(h) {
        return Err(Error::Precondition("Hopf algebra is not connected".into()));
    }
    Ok(())
}

/// Both series for a connected cocommutative `H`: the upper series of `H`
/// and the lower series of `H*`, padded to a common length.
struct Duality {
    dual: HopfAlgebra,
    upper: SeriesChain,
    lower: SeriesChain,
    levels: usize,
}

impl Duality {
    fn new(h: &HopfAlgebra) -> Result<Self> {
        require_connected_cocommutative(h)?;
        let dual = h.dual();
        let upper = upper_power_series(h)?;
        let lower = lower_power_series(&dual)?;
        let levels = upper.terms.len().max(lower.terms.len());
        Ok(Duality { dual, upper, lower, levels })
    }

    /// Two-sided ideal generated by `U⁺` in `A`.
    fn augmented_ideal(a: &HopfAlgebra, u: &Subspace) -> Result<Subspace> {
        a.algebra().ideal_closure(&a.augmentation_part(u)?)
    }
}

/// `Γⁿ(H) = (H*·Γₙ(H*)⁺·H*)^⊥` and `Γₙ(H*) = (H·Γⁿ(H)⁺·H)^⊥` at every
/// level, as exact subspace equalities.
pub fn verify_duality(h: &HopfAlgebra) -> Result<VerificationReport> {
    let d = Duality::new(h)?;
    let mut report = VerificationReport::new(format!("upper/lower series duality, dim {}", h.dim()));
    for n in 0..=d.levels {
        let upper = d.upper.term(n);
        let lower = d.lower.term(n);
        let w = Duality::augmented_ideal(&d.dual, lower)?;
        let ann = w.annihilator();
        report.record(format!("upper term {n} = annihilator of lower ideal"), upper == &ann, || {
            format!("dim upper {} vs annihilator {}", upper.dim(), ann.dim())
        });
        let v = Duality::augmented_ideal(h, upper)?;
        let ann = v.annihilator();
        report.record(format!("lower term {n} = annihilator of upper ideal"), lower == &ann, || {
            format!("dim lower {} vs annihilator {}", lower.dim(), ann.dim())
        });
    }
    Ok(report)
}

fn quotient_dim(parent: &HopfAlgebra, big: &Subspace, small: &Subspace) -> Result<usize> {
    let handle = parent.hopf_subalgebra(big)?;
    let k = handle.restrict(small)?;
    let (q, _) = handle.hopf.quotient_hopf(&k)?;
    if !q.verify_axioms().overall {
        return Err(Error::Precondition("quotient Hopf algebra failed verification".into()));
    }
    Ok(q.dim())
}

/// `dim Γⁿ/Γᵐ = dim Γₘ(H*)/dim Γₙ(H*)` for all `n ≥ m`, with both quotients
/// constructed as Hopf algebras.
pub fn verify_factor_dims(h: &HopfAlgebra) -> Result<VerificationReport> {
    let d = Duality::new(h)?;
    let mut report = VerificationReport::new(format!("factor dimensions, dim {}", h.dim()));
    for n in 0..d.levels {
        for m in 0..=n {
            let up = quotient_dim(h, d.upper.term(n), d.upper.term(m))?;
            let down = quotient_dim(&d.dual, d.lower.term(m), d.lower.term(n))?;
            report.record(format!("levels ({n}, {m})"), up == down, || {
                format!("upper factor dim {up}, lower factor dim {down}")
            });
        }
    }
    Ok(report)
}

/// With `J` the radical of `H*` and `Jₙ = Γₙ(H*)⁺`: `Jₙ ⊆ J^{pⁿ}`,
/// `Jₙ ∩ J^{pⁿ+1} = Jₙ²`, the two factor-dimension formulas, and
/// `H_{pⁿ-1} ⊆ (H*·Jₙ·H*)^⊥`.
pub fn verify_radical_lemmas(h: &HopfAlgebra) -> Result<VerificationReport> {
    let d = Duality::new(h)?;
    let dual = &d.dual;
    let p = h.field().p() as usize;
    let j = dual.augmentation_ideal();
    let jpow = dual.algebra().ideal_power_chain(&j)?;
    let filt = coradical_filtration_dual(h)?;
    let mut report = VerificationReport::new(format!("radical lemmas, dim {}", h.dim()));
    let jn = |n: usize| dual.augmentation_part(d.lower.term(n));
    let jp = |k: usize| jpow.power(k.max(1)).clone();
    let ann_w = |n: usize| -> Result<Subspace> { Ok(Duality::augmented_ideal(dual, d.lower.term(n))?.annihilator()) };
    let mut q = 1usize;
    for n in 0..=d.levels {
        let j_n = jn(n)?;
        let big = jp(q);
        report.record(format!("J_{n} in J^(p^{n})"), j_n.is_subspace_of(&big), || {
            format!("dim J_{n} = {}, dim J^{q} = {}", j_n.dim(), big.dim())
        });
        let lhs = j_n.intersect(&jp(q + 1))?;
        let rhs = dual.algebra().subspace_product(&j_n, &j_n)?;
        report.record(format!("J_{n} meet J^(p^{n}+1) = J_{n}^2"), lhs == rhs, || {
            format!("dims {} vs {}", lhs.dim(), rhs.dim())
        });
        if n >= 1 {
            let qp = q / p;
            let j_prev = jn(n - 1)?;
            let exponent = j_prev.dim() - j_prev.intersect(&jp(qp + 1))?.dim();
            let ratio = d.lower.term(n - 1).dim() / d.lower.term(n).dim();
            let exact = d.lower.term(n - 1).dim() % d.lower.term(n).dim() == 0;
            report.record(format!("dim G_{}/G_{n} = p^{exponent}", n - 1), exact && ratio == p.pow(exponent as u32), || {
                format!("dims {} / {}", d.lower.term(n - 1).dim(), d.lower.term(n).dim())
            });
            let jh = dual.algebra().subspace_product(&j_prev, &Subspace::full(h.field(), h.dim()))?;
            let e2 = jh.sum(&jp(qp + 1))?.dim() - jp(qp + 1).dim();
            let (a, b) = (ann_w(n)?.dim(), ann_w(n - 1)?.dim());
            report.record(format!("annihilator ratio at level {n} = p^{e2}"), a == b * p.pow(e2 as u32), || {
                format!("dims {a} / {b}")
            });
        }
        let hq = filt.term(q - 1);
        let w = ann_w(n)?;
        report.record(format!("H_(p^{n}-1) in level-{n} annihilator"), hq.is_subspace_of(&w), || {
            format!("dim H_{} = {}, annihilator dim {}", q - 1, hq.dim(), w.dim())
        });
        q = q.saturating_mul(p);
    }
    Ok(report)
}

/// For connected cocommutative `H`: locality of `Γ¹`, of every factor
/// `Γⁿ/Γⁿ⁻¹`, and of `H` coincide; dually, connectedness of `K/Γ₁(K)`,
/// of every `Γₙ₋₁(K)/Γₙ(K)`, and of `K = H*` coincide.
pub fn verify_factor_equivalences(h: &HopfAlgebra) -> Result<VerificationReport> {
    let d = Duality::new(h)?;
    let mut report = VerificationReport::new(format!("factor equivalences, dim {}", h.dim()));
    let gamma1 = h.hopf_subalgebra(d.upper.term(1))?;
    let g1_local = is_local(&gamma1.hopf).is_local;
    let mut factors_local = true;
    for n in 1..d.upper.terms.len() {
        let handle = h.hopf_subalgebra(d.upper.term(n))?;
        let k = handle.restrict(d.upper.term(n - 1))?;
        let (q, _) = handle.hopf.quotient_hopf(&k)?;
        factors_local &= is_local(&q).is_local;
    }
    let h_local = is_local(h).is_local;
    report.record("local: G^1, every factor, H agree", g1_local == factors_local && factors_local == h_local, || {
        format!("G^1 {g1_local}, factors {factors_local}, H {h_local}")
    });

    let k = &d.dual;
    let mut first_connected = true;
    let mut factors_connected = true;
    for n in 1..d.lower.terms.len() {
        let handle = k.hopf_subalgebra(d.lower.term(n - 1))?;
        let sub = handle.restrict(d.lower.term(n))?;
        let (q, _) = handle.hopf.quotient_hopf(&sub)?;
        let c = is_connected(&q);
        if n == 1 {
            first_connected = c;
        }
        factors_connected &= c;
    }
    let k_connected = is_connected(k);
    report.record(
        "connected: K/G_1, every factor, K agree",
        first_connected == factors_connected && factors_connected == k_connected,
        || format!("K/G_1 {first_connected}, factors {factors_connected}, K {k_connected}"),
    );
    Ok(report)
}

/// For a connected Hopf subalgebra `K ⊆ H`: `K_n = K ∩ H_n` for all `n`,
/// and `dim H / dim K ≥ p^{dim H_n - dim K_n}` at every `n` with
/// `K_i = H_i` for all `i < n`.
pub fn verify_dim_inequality(h: &HopfAlgebra, k: &Subspace) -> Result<VerificationReport> {
    h.require_verified()?;
    let handle = h.hopf_subalgebra(k)?;
    if !is_connected(h) || !is_connected(&handle.hopf) {
        return Err(Error::Precondition("dimension inequality needs connected Hopf algebras".into()));
    }
    let p = h.field().p() as u128;
    let hf = coradical_filtration_dual(h)?;
    let kf = coradical_filtration_dual(&handle.hopf)?;
    let mut report = VerificationReport::new(format!("dimension inequality, dim {} over dim {}", h.dim(), k.dim()));
    let len = hf.terms.len().max(kf.terms.len());
    let mut agree_below = true;
    for n in 0..len {
        let kn = handle.extend(kf.term(n));
        let hn = hf.term(n);
        let meet = k.intersect(hn)?;
        report.record(format!("K_{n} = K meet H_{n}"), kn == meet, || {
            format!("dims {} vs {}", kn.dim(), meet.dim())
        });
        if agree_below {
            let e = (hn.dim() - kn.dim()) as u32;
            let lhs = h.dim() as u128;
            let rhs = (k.dim() as u128).saturating_mul(p.saturating_pow(e));
            report.record(format!("dim H / dim K >= p^(dim H_{n} - dim K_{n})"), lhs >= rhs, || {
                format!("{} / {} < {}^{e}", h.dim(), k.dim(), p)
            });
        }
        if &kn != hn {
            agree_below = false;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::gfp::{basis_vector, Field};

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn lower_series_examples() {
        let c4 = cyclic_group(gf(2), 4).unwrap();
        let s = lower_power_series(&c4).unwrap();
        assert_eq!(s.terms[1], Subspace::coordinate(gf(2), 4, [0, 2]));
        assert_eq!(s.terms[2], c4.unit_line());
        assert_eq!(s.stabilized_at, 2);
        // functions on C3 over GF(3) are étale: Frobenius is bijective
        let fun = cyclic_group(gf(2), 3).unwrap().dual();
        let s = lower_power_series(&fun).unwrap();
        assert_eq!(s.dims(), vec![3]);
        let div = height_two_line(gf(2)).unwrap().dual();
        assert_eq!(lower_power_series(&div).unwrap().dims(), vec![4, 1]);
        assert!(matches!(lower_power_series(&heisenberg(gf(2)).unwrap()), Err(Error::NonCommutative)));
    }

    #[test]
    fn upper_series_examples() {
        let t4 = height_two_line(gf(2)).unwrap();
        assert!(upper_power_series(&t4).unwrap().terms[1].is_full());
        let heis = heisenberg(gf(3)).unwrap();
        assert!(upper_power_series(&heis).unwrap().terms[1].is_full());
        let fun = cyclic_group(gf(3), 3).unwrap().dual();
        assert!(upper_power_series(&fun).unwrap().terms[1].is_full());
        let h9 = height_two_line(gf(3)).unwrap();
        assert_eq!(upper_power_series(&h9).unwrap().dims(), vec![1, 9]);
        let d9 = divided_line(gf(3)).unwrap();
        assert_eq!(upper_power_series(&d9).unwrap().dims(), vec![1, 3, 9]);
    }

    #[test]
    fn duality_holds_on_small_fixtures() {
        for h in [height_two_line(gf(2)).unwrap(), truncated_line(gf(3)).unwrap(), height_two_line(gf(3)).unwrap()] {
            let r = verify_duality(&h).unwrap();
            assert!(r.overall, "{r}");
            let r = verify_factor_dims(&h).unwrap();
            assert!(r.overall, "{r}");
            let r = verify_radical_lemmas(&h).unwrap();
            assert!(r.overall, "{r}");
            let r = verify_factor_equivalences(&h).unwrap();
            assert!(r.overall, "{r}");
        }
        assert!(matches!(verify_duality(&cyclic_group(gf(3), 2).unwrap()), Err(Error::Precondition(_))));
        assert!(matches!(verify_duality(&example_b(gf(2), 0).unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn witt_line_factors_are_all_non_local() {
        let h = witt_line(gf(3)).unwrap();
        let r = verify_factor_equivalences(&h).unwrap();
        assert!(r.overall, "{r}");
        assert!(!is_local(&h).is_local);
    }

    #[test]
    fn dim_inequality_examples() {
        let f = gf(3);
        let h = height_two_line(f).unwrap();
        assert!(verify_dim_inequality(&h, &Subspace::full(f, 9)).unwrap().overall);
        // u(span{y}) with y = x^p
        let k = h.algebra().generated_subalgebra(&[basis_vector(9, 3)], true).unwrap();
        assert_eq!(k.dim(), 3);
        let r = verify_dim_inequality(&h, &k).unwrap();
        assert!(r.overall, "{r}");
    }
}
