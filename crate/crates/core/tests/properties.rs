//! Property tests for the linear algebra, the Hopf structures and the
//! document formats.

use std::collections::BTreeMap;

use proptest::prelude::*;

use hopflab::builders::*;
use hopflab::format::{format_poly, from_hsc, parse_poly, to_hsc, Poly, Scope};
use hopflab::gfp::{Field, Subspace, Vector};
use hopflab::hopf::HopfAlgebra;
use hopflab::locality::{is_local, is_local_subalgebra, theorem_a_check};
use hopflab::structure::{antipode_stable, coradical_filtration_direct, coradical_filtration_dual};

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

/// A prime, an ambient dimension and two families of vectors.
fn two_families() -> impl Strategy<Value = (u32, usize, Vec<Vector>, Vec<Vector>)> {
    (prime(), 1usize..7).prop_flat_map(|(p, n)| {
        let vec = proptest::collection::vec(0..p, n);
        (
            Just(p),
            Just(n),
            proptest::collection::vec(vec.clone(), 0..6),
            proptest::collection::vec(vec, 0..6),
        )
    })
}

proptest! {
    #[test]
    fn field_laws(p in prime(), a in 0u32..7, b in 0u32..7, c in 0u32..7) {
        let f = gf(p);
        let (a, b, c) = (a % p, b % p, c % p);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.pow(a, p as u64), a);
    }

    #[test]
    fn subspace_lattice_laws((p, n, us, vs) in two_families()) {
        let f = gf(p);
        let u = Subspace::span(f, n, us.iter().cloned());
        let v = Subspace::span(f, n, vs.iter().cloned());
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim() + u.dim(), n);
        prop_assert_eq!(ann.annihilator(), u.clone());
        // ann(U + V) = ann U ∩ ann V
        prop_assert_eq!(s.annihilator(), ann.intersect(&v.annihilator()).unwrap());
        for w in &us {
            prop_assert!(u.contains(w));
            let coords = u.coordinates(w).unwrap();
            prop_assert_eq!(&u.combine(&coords), w);
        }
        // the canonical form does not depend on the order of the spanning set
        let reversed = Subspace::span(f, n, us.iter().rev().cloned());
        prop_assert_eq!(reversed, u);
    }
}

fn fixtures() -> Vec<HopfAlgebra> {
    let mut out = vec![
        example_a(gf(2), 1, 0, 1).unwrap(),
        example_a(gf(3), 0, 1, 0).unwrap(),
        example_b(gf(2), 1).unwrap(),
        example_b(gf(3), 2).unwrap(),
        heisenberg(gf(3)).unwrap(),
        smash_demo().unwrap(),
        cyclic_group(gf(3), 4).unwrap(),
        divided_line(gf(3)).unwrap(),
    ];
    let duals: Vec<HopfAlgebra> = out.iter().map(HopfAlgebra::dual).collect();
    out.extend(duals);
    out
}

fn random_element(h: &HopfAlgebra, seed: &[u32]) -> Vector {
    let p = h.field().p();
    (0..h.dim()).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 1) % p).collect()
}

/// `(a₁ ⊗ a₂)(b₁ ⊗ b₂) = a₁b₁ ⊗ a₂b₂` on dense tensor-square vectors.
fn tensor_multiply(h: &HopfAlgebra, x: &[u32], y: &[u32]) -> Vector {
    let n = h.dim();
    let f = h.field();
    let mut out = vec![0; n * n];
    for (s, &c) in x.iter().enumerate().filter(|e| *e.1 != 0) {
        for (t, &d) in y.iter().enumerate().filter(|e| *e.1 != 0) {
            let left = h.algebra().mul_basis(s / n, t / n);
            let right = h.algebra().mul_basis(s % n, t % n);
            let cd = f.mul(c, d);
            for (j, a) in left.iter() {
                for (k, b) in right.iter() {
                    let idx = j * n + k;
                    out[idx] = f.add(out[idx], f.mul(cd, f.mul(a, b)));
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn comultiplication_is_multiplicative_on_elements(
        which in 0usize..16,
        sa in proptest::collection::vec(0u32..1000, 1..5),
        sb in proptest::collection::vec(0u32..1000, 1..5),
    ) {
        let fx = fixtures();
        let h = &fx[which % fx.len()];
        let n = h.dim();
        let (a, b) = (random_element(h, &sa), random_element(h, &sb));
        let ab = h.multiply(&a, &b).unwrap();
        let lhs = h.comultiply(&ab).to_dense(n * n);
        let rhs = tensor_multiply(h, &h.comultiply(&a).to_dense(n * n), &h.comultiply(&b).to_dense(n * n));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(h.counit_of(&ab), h.field().mul(h.counit_of(&a), h.counit_of(&b)));
    }

    #[test]
    fn antipode_is_an_anti_homomorphism(
        which in 0usize..16,
        sa in proptest::collection::vec(0u32..1000, 1..5),
        sb in proptest::collection::vec(0u32..1000, 1..5),
    ) {
        let fx = fixtures();
        let h = &fx[which % fx.len()];
        let (a, b) = (random_element(h, &sa), random_element(h, &sb));
        let s_ab = h.antipode_of(&h.multiply(&a, &b).unwrap());
        let sb_sa = h.multiply(&h.antipode_of(&b), &h.antipode_of(&a)).unwrap();
        prop_assert_eq!(s_ab, sb_sa);
    }

    #[test]
    fn random_smash_products_behave(seed in 0u64..10_000) {
        let inst = random_smash_instance(seed).unwrap();
        let h = &inst.hopf;
        prop_assert!(h.verify_axioms().overall);
        prop_assert!(h.is_cocommutative());
        let t = theorem_a_check(h).unwrap();
        prop_assert!(t.equivalence_holds, "{}", inst.description);
        // S² = id for cocommutative H
        let s = h.antipode_matrix();
        prop_assert_eq!(s.mul(&s).unwrap(), hopflab::gfp::Matrix::identity(h.field(), h.dim()));
        let dual = coradical_filtration_dual(h).unwrap();
        let direct = coradical_filtration_direct(h, &dual.terms[0]).unwrap();
        prop_assert!(dual.same_terms(&direct));
        prop_assert!(antipode_stable(h, &dual).unwrap());
        let back = from_hsc(&to_hsc(h)).unwrap();
        prop_assert_eq!(&back, h);
        prop_assert_eq!(back.dual().dual(), back);
    }

    #[test]
    fn subalgebras_of_local_fixtures_are_local(
        gens in proptest::collection::vec(proptest::collection::vec(0u32..3, 27), 1..4),
    ) {
        let h = heisenberg(gf(3)).unwrap();
        let aug = h.augmentation_ideal();
        let vs: Vec<Vector> = gens.iter().map(|c| aug.combine(&c[..aug.dim()])).collect();
        let s = h.algebra().generated_subalgebra(&vs, true).unwrap();
        prop_assert!(is_local(&h).is_local);
        prop_assert!(is_local_subalgebra(&h, &s).unwrap().is_local);
    }

    #[test]
    fn expressions_round_trip(terms in proptest::collection::vec(
        (proptest::collection::vec(0usize..3, 0..4), 1u32..5), 0..6)) {
        let f = gf(5);
        let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let params = BTreeMap::new();
        let scope = Scope { field: f, generators: &gens, parameters: &params };
        let mut poly = Poly::new();
        for (w, c) in terms {
            let e = poly.entry(w).or_insert(0);
            *e = f.add(*e, c);
        }
        poly.retain(|_, c| *c != 0);
        let text = format_poly(&poly, &gens);
        prop_assert_eq!(parse_poly(&text, &scope).unwrap(), poly);
    }
}

#[test]
fn dual_swaps_commutativity_on_fixtures() {
    for h in fixtures() {
        let d = h.dual();
        assert_eq!(h.is_commutative(), d.is_cocommutative());
        assert_eq!(h.is_cocommutative(), d.is_commutative());
        assert!(d.verify_axioms().overall);
    }
}
