//! Coalgebra-side structure: coradical and coradical filtration, primitive
//! elements, group-like elements and the identity component.
//!
//! The coradical is read off the dual algebra: `H₀ = J^⊥` where `J` is the
//! Jacobson radical of `H*`. Two regimes are supported, a commutative dual
//! (Frobenius radical) and a connected `H` (then `J = (H*)⁺`, certified by
//! nilpotency). Anything else is reported as unsupported.

use serde::Serialize;

use crate::algebra::Quotient;
use crate::error::{Error, Result};
use crate::gfp::{Field, Matrix, SparseVec, Subspace, Vector};
use crate::hopf::{HopfAlgebra, HopfSubalgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrationMethod {
    DualRadical,
    Direct,
}

/// `H₀ ⊆ H₁ ⊆ …`, ending with the first term equal to `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationChain {
    pub terms: Vec<Subspace>,
    pub method: FiltrationMethod,
}

impl FiltrationChain {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// `H_n`; terms past the end are the whole algebra.
    pub fn term(&self, n: usize) -> &Subspace {
        &self.terms[n.min(self.terms.len() - 1)]
    }

    /// Same subspaces, regardless of how they were computed.
    pub fn same_terms(&self, other: &FiltrationChain) -> bool {
        self.terms == other.terms
    }
}

/// How the radical of the dual was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalRoute {
    /// `H*` commutative: kernel of an iterated Frobenius map.
    Frobenius,
    /// `H` connected: `(H*)⁺` is nilpotent, hence the radical.
    Augmentation,
}

/// Jacobson radical of `H*`, as a subspace of the dual coordinates.
pub fn dual_radical(h: &HopfAlgebra) -> Result<(Subspace, RadicalRoute)> {
    radical_of(&h.dual())
}

fn radical_of(d: &HopfAlgebra) -> Result<(Subspace, RadicalRoute)> {
    if d.is_commutative() {
        return Ok((d.algebra().commutative_radical()?, RadicalRoute::Frobenius));
    }
    let aug = d.augmentation_ideal();
    if d.algebra().ideal_power_chain(&aug)?.nilpotent {
        return Ok((aug, RadicalRoute::Augmentation));
    }
    Err(Error::Unsupported(
        "coradical needs a commutative dual or a connected Hopf algebra".into(),
    ))
}

/// `H₀`, the sum of the simple subcoalgebras.
pub fn coradical(h: &HopfAlgebra) -> Result<Subspace> {
    h.require_verified()?;
    Ok(dual_radical(h)?.0.annihilator())
}

/// `H_n = (J^{n+1})^⊥` from the powers of the dual radical.
pub fn coradical_filtration_dual(h: &HopfAlgebra) -> Result<FiltrationChain> {
    h.require_verified()?;
    let d = h.dual();
    let (j, _) = radical_of(&d)?;
    let chain = d.algebra().ideal_power_chain(&j)?;
    if !chain.nilpotent {
        return Err(Error::Precondition("dual radical is not nilpotent".into()));
    }
    let terms = chain.powers.iter().map(Subspace::annihilator).collect();
    Ok(FiltrationChain { terms, method: FiltrationMethod::DualRadical })
}

/// `H_n = Δ⁻¹(H⊗H_{n-1} + H₀⊗H)` iterated from a given coradical.
pub fn coradical_filtration_direct(h: &HopfAlgebra, h0: &Subspace) -> Result<FiltrationChain> {
    h.require_verified()?;
    if h0.ambient() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), got: h0.ambient() });
    }
    let mut terms = vec![h0.clone()];
    while !terms.last().unwrap().is_full() {
        let prev = terms.last().unwrap();
        let next = h.delta_preimage_sum(h0, prev)?;
        if &next == prev {
            return Err(Error::Precondition("coradical filtration stalls; H0 is not the coradical".into()));
        }
        terms.push(next);
    }
    Ok(FiltrationChain { terms, method: FiltrationMethod::Direct })
}

/// Whether `H₀ = k·1`, certified by nilpotency of the dual augmentation
/// ideal.
pub fn is_connected(h: &HopfAlgebra) -> bool {
    let d = h.dual();
    d.algebra().ideal_power_chain(&d.augmentation_ideal()).map(|c| c.nilpotent).unwrap_or(false)
}

/// Primitive elements with their restricted Lie structure.
#[derive(Clone, Debug)]
pub struct PrimitiveSpace {
    pub space: Subspace,
    /// `bracket[a][b]`: coordinates of `[v_a, v_b]` on the canonical basis
    /// `v_0, v_1, …` of `space`.
    pub bracket: Vec<Vec<Vector>>,
    /// `v_a^p` in coordinates of `H`.
    pub pmap: Vec<Vector>,
    /// `v_a^p` in coordinates on the basis of `space`.
    pub pmap_coords: Vec<Vector>,
}

impl PrimitiveSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        self.space.basis()
    }
}

pub fn primitives(h: &HopfAlgebra) -> Result<PrimitiveSpace> {
    h.require_verified()?;
    let f = h.field();
    let space = h.primitive_space();
    let basis = space.basis().to_vec();
    let closed = |v: &Vector, what: &str| {
        space.coordinates(v).ok_or_else(|| Error::Precondition(format!("primitive space not closed under {what}")))
    };
    let mut bracket = Vec::with_capacity(basis.len());
    for a in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for b in &basis {
            let mut c = h.multiply(a, b)?;
            f.axpy(&mut c, f.neg(1), &h.multiply(b, a)?);
            row.push(closed(&c, "the bracket")?);
        }
        bracket.push(row);
    }
    let pmap: Vec<Vector> = basis.iter().map(|a| h.algebra().pow(a, f.p() as u64)).collect::<Result<_>>()?;
    let pmap_coords = pmap.iter().map(|v| closed(v, "p-th powers")).collect::<Result<_>>()?;
    Ok(PrimitiveSpace { space, bracket, pmap, pmap_coords })
}

/// Group-like elements found over `GF(p)`.
#[derive(Clone, Debug)]
pub struct GroupLikeSet {
    /// The unit first, then in increasing coordinate order.
    pub elements: Vec<Vector>,
    /// Whether the elements span the coradical.
    pub complete: bool,
    pub coradical_dim: usize,
    /// For each element `g`, the idempotent of `H*` whose character is
    /// evaluation at `g`; empty when found through connectedness.
    pub idempotents: Vec<Vector>,
}

impl GroupLikeSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn span(&self, f: Field, dim: usize) -> Subspace {
        Subspace::span(f, dim, self.elements.iter())
    }
}

/// Primitive idempotents of a commutative semisimple algebra `q`, one per
/// simple factor. They span the Frobenius-fixed subalgebra `{a : a^p = a}
/// ≅ GF(p)^r`, which is split by the indicators `1 - (a - λ)^{p-1}`.
fn primitive_idempotents(q: &crate::algebra::Algebra) -> Result<Vec<Vector>> {
    let f = q.field();
    let n = q.dim();
    let fr = q.frobenius_matrix()?;
    let mut shifted = fr.clone();
    for i in 0..n {
        shifted.set(i, i, f.sub(shifted.get(i, i), 1));
    }
    let fixed = shifted.kernel();
    let mut idems = vec![q.unit().to_vec()];
    for a in fixed.basis() {
        let mut next = Vec::new();
        for e in &idems {
            let ea = q.multiply(e, a)?;
            for lambda in 0..f.p() {
                let mut shifted = ea.clone();
                f.axpy(&mut shifted, f.neg(lambda), e);
                let mut ind = q.pow(&shifted, (f.p() - 1) as u64)?;
                for x in ind.iter_mut() {
                    *x = f.neg(*x);
                }
                f.axpy(&mut ind, 1, e);
                let part = q.multiply(e, &ind)?;
                if part.iter().any(|&c| c != 0) {
                    next.push(part);
                }
            }
        }
        idems = next;
        if idems.len() == fixed.dim() {
            break;
        }
    }
    Ok(idems)
}

pub fn group_likes(h: &HopfAlgebra) -> Result<GroupLikeSet> {
    h.require_verified()?;
    let f = h.field();
    let n = h.dim();
    let d = h.dual();
    if !d.is_commutative() {
        if is_connected(h) {
            return Ok(GroupLikeSet { elements: vec![h.unit().to_vec()], complete: true, coradical_dim: 1, idempotents: Vec::new() });
        }
        return Err(Error::Unsupported("group-likes need a cocommutative or connected Hopf algebra".into()));
    }
    let j = d.algebra().commutative_radical()?;
    let (q, _) = d.algebra().quotient_algebra(&j)?;
    let quotient = Quotient::new(&j);
    let lift_coords = |v: &[u32]| -> Vector {
        let mut out = vec![0; n];
        for (k, &c) in quotient.complement.iter().enumerate() {
            out[c] = v[k];
        }
        out
    };
    let proj = quotient.basis_images();
    let mut found: Vec<(Vector, Vector)> = Vec::new();
    for e in primitive_idempotents(&q)? {
        // the factor eQ must be GF(p) itself for a rational character
        let mut factor = crate::gfp::SpanBuilder::new(f, q.dim());
        for k in 0..q.dim() {
            let mut b = vec![0; q.dim()];
            b[k] = 1;
            factor.insert(&q.multiply(&e, &b)?);
        }
        if factor.dim() != 1 {
            continue;
        }
        // χ(b) with e·b = χ(b)·e
        let pivot = e.iter().position(|&c| c != 0).unwrap();
        let inv = f.inv(e[pivot]);
        let chi = |b: &SparseVec| -> Result<u32> {
            let eb = q.multiply(&e, &b.to_dense(q.dim()))?;
            Ok(f.mul(eb[pivot], inv))
        };
        let g: Vector = proj.iter().map(chi).collect::<Result<_>>()?;
        let lifted = d.algebra().lift_idempotent(&lift_coords(&e))?;
        found.push((g, lifted));
    }
    for (g, _) in &found {
        let dg = h.comultiply(g);
        let gg: Vec<(u32, u32)> = g
            .iter()
            .enumerate()
            .filter(|e| *e.1 != 0)
            .flat_map(|(a, &ca)| {
                g.iter().enumerate().filter(|e| *e.1 != 0).map(move |(b, &cb)| ((a * n + b) as u32, f.mul(ca, cb)))
            })
            .collect();
        if dg != SparseVec::from_entries(&f, gg) || h.counit_of(g) != 1 {
            return Err(Error::Precondition("character did not yield a group-like element".into()));
        }
    }
    let unit = h.unit().to_vec();
    found.sort_by(|a, b| (a.0 != unit).cmp(&(b.0 != unit)).then_with(|| a.0.cmp(&b.0)));
    let coradical_dim = q.dim();
    let complete = found.len() == coradical_dim;
    let (elements, idempotents) = found.into_iter().unzip();
    Ok(GroupLikeSet { elements, complete, coradical_dim, idempotents })
}

/// The irreducible component `H_e` of the unit as a Hopf subalgebra:
/// `H_e = ((1 - ê)·H*)^⊥` with `ê` the idempotent for evaluation at `1`.
pub fn identity_component(h: &HopfAlgebra) -> Result<HopfSubalgebra> {
    h.require_verified()?;
    let n = h.dim();
    let f = h.field();
    if is_connected(h) {
        return h.hopf_subalgebra(&Subspace::full(f, n));
    }
    let gl = group_likes(h)?;
    if !gl.complete {
        return Err(Error::Precondition(format!(
            "only {} of {} coradical dimensions are spanned by rational group-likes",
            gl.len(),
            gl.coradical_dim
        )));
    }
    let d = h.dual();
    let e_hat = gl
        .elements
        .iter()
        .zip(&gl.idempotents)
        .find(|(g, _)| g.as_slice() == h.unit())
        .map(|(_, e)| e.clone())
        .ok_or_else(|| Error::Precondition("unit is not among the group-likes".into()))?;
    let mut comp = d.unit().to_vec();
    f.axpy(&mut comp, f.neg(1), &e_hat);
    let ideal = d.algebra().subspace_product(&Subspace::span(f, n, [comp]), &Subspace::full(f, n))?;
    h.hopf_subalgebra(&ideal.annihilator())
}

/// `S(H_n) = H_n` for every term.
pub fn antipode_stable(h: &HopfAlgebra, chain: &FiltrationChain) -> Result<bool> {
    let s: Matrix = h.antipode_matrix();
    for t in &chain.terms {
        if &t.map(&s)? != t {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::gfp::basis_vector;

    fn gf(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    fn both(h: &HopfAlgebra) -> FiltrationChain {
        let dual = coradical_filtration_dual(h).unwrap();
        let direct = coradical_filtration_direct(h, &coradical(h).unwrap()).unwrap();
        assert!(dual.same_terms(&direct));
        dual
    }

    #[test]
    fn coradical_examples() {
        let c3 = cyclic_group(gf(2), 3).unwrap();
        assert!(coradical(&c3).unwrap().is_full());
        let heis = heisenberg(gf(3)).unwrap();
        assert_eq!(coradical(&heis).unwrap(), heis.unit_line());
        let demo = smash_demo().unwrap();
        let h0 = coradical(&demo).unwrap();
        assert_eq!(h0.dim(), 2);
        let gl = group_likes(&demo).unwrap();
        assert_eq!(gl.span(demo.field(), demo.dim()), h0);
    }

    #[test]
    fn filtration_examples() {
        let h = height_two_line(gf(2)).unwrap();
        let chain = both(&h);
        assert_eq!(chain.dims(), vec![1, 3, 4]);
        // H₁ = span{1, x, x^2 = y}
        assert_eq!(chain.terms[1], Subspace::coordinate(gf(2), 4, [0, 1, 2]));
        for p in [2, 3, 5] {
            // the group algebra itself is cosemisimple; its dual is connected
            let c = cyclic_group(gf(p), p as usize).unwrap();
            assert_eq!(both(&c).dims(), vec![p as usize]);
            assert_eq!(both(&c.dual()).dims(), (1..=p as usize).collect::<Vec<_>>());
        }
        let b = example_b(gf(2), 0).unwrap();
        let chain = both(&b);
        assert_eq!(chain.terms[1], Subspace::coordinate(gf(2), 8, [0, 1, 2]));
        assert_eq!(*chain.dims().last().unwrap(), 8);
        let heis = heisenberg(gf(3)).unwrap();
        assert_eq!(both(&heis).dims()[1], 4);
        let t = truncated_line(gf(2)).unwrap();
        assert_eq!(both(&t).terms, vec![t.unit_line(), Subspace::full(gf(2), 2)]);
    }

    #[test]
    fn connectedness() {
        assert!(is_connected(&example_a(gf(3), 0, 1, 0).unwrap()));
        assert!(is_connected(&example_b(gf(2), 1).unwrap()));
        assert!(!is_connected(&cyclic_group(gf(3), 2).unwrap()));
        assert!(is_connected(&witt_line(gf(5)).unwrap()));
    }

    #[test]
    fn primitive_examples() {
        let t = truncated_line(gf(2)).unwrap();
        assert_eq!(primitives(&t).unwrap().space, Subspace::coordinate(gf(2), 2, [1]));
        let b = example_b(gf(2), 0).unwrap();
        // x = e1, y = e2, z = e4
        assert_eq!(primitives(&b).unwrap().space, Subspace::coordinate(gf(2), 8, [1, 2]));
        let h2 = height_two_line(gf(2)).unwrap();
        let prim = primitives(&h2).unwrap();
        assert_eq!(prim.space, Subspace::coordinate(gf(2), 4, [1, 2]));
        assert_eq!(prim.pmap[0], basis_vector(4, 2));
        let heis = heisenberg(gf(3)).unwrap();
        let prim = primitives(&heis).unwrap();
        assert_eq!(prim.dim(), 3);
        // [x, y] = z
        assert_eq!(prim.bracket[0][1], vec![0, 0, 1]);
    }

    #[test]
    fn group_like_examples() {
        let heis = heisenberg(gf(2)).unwrap();
        let gl = group_likes(&heis).unwrap();
        assert_eq!(gl.elements, vec![heis.unit().to_vec()]);
        assert!(gl.complete);

        let c3 = cyclic_group(gf(2), 3).unwrap();
        let gl = group_likes(&c3).unwrap();
        assert_eq!(gl.len(), 3);
        assert!(gl.complete);

        let fun = c3.dual();
        let gl = group_likes(&fun).unwrap();
        assert_eq!(gl.elements, vec![fun.unit().to_vec()]);
        assert_eq!(gl.coradical_dim, 3);
        assert!(!gl.complete);

        let demo = smash_demo().unwrap();
        let gl = group_likes(&demo).unwrap();
        assert_eq!(gl.len(), 2);
        assert!(gl.complete);
    }

    #[test]
    fn identity_components() {
        let heis = heisenberg(gf(2)).unwrap();
        assert!(identity_component(&heis).unwrap().space.is_full());
        let demo = smash_demo().unwrap();
        let he = identity_component(&demo).unwrap();
        assert_eq!(he.space, Subspace::coordinate(gf(3), 6, [0, 1, 2]));
        assert!(is_connected(&he.hopf));
        assert!(demo.is_normal_hopf_subalgebra(&he.space));
        let c2 = cyclic_group(gf(3), 2).unwrap();
        assert_eq!(identity_component(&c2).unwrap().space, c2.unit_line());
        let fun = cyclic_group(gf(2), 3).unwrap().dual();
        assert!(matches!(identity_component(&fun), Err(Error::Precondition(_))));
    }

    #[test]
    fn filtration_terms_are_antipode_stable() {
        for h in [example_b(gf(3), 1).unwrap(), smash_demo().unwrap(), heisenberg(gf(2)).unwrap()] {
            assert!(antipode_stable(&h, &both(&h)).unwrap());
        }
    }
}
