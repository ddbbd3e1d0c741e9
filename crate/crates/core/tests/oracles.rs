//! Brute-force oracles: small fixtures are enumerated element by element
//! and compared against the linear-algebra answers of the library.

use hopflab::builders::*;
use hopflab::gfp::{basis_vector, kernel_of_images, Field, SparseVec, Subspace, Vector};
use hopflab::hopf::HopfAlgebra;
use hopflab::locality::is_local;
use hopflab::Error;
use hopflab::structure::{coradical_filtration_direct, coradical_filtration_dual, group_likes, is_connected, primitives};

/// Largest number of vectors an oracle enumerates.
const ENUM_LIMIT: u64 = 1 << 12;

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn small_fixtures() -> Vec<(String, HopfAlgebra)> {
    let mut out: Vec<(String, HopfAlgebra)> = Vec::new();
    for p in [2, 3, 5] {
        let f = gf(p);
        out.push((format!("truncated line p={p}"), truncated_line(f).unwrap()));
        out.push((format!("witt line p={p}"), witt_line(f).unwrap()));
        for n in [2, 3, 4] {
            out.push((format!("C{n} over GF({p})"), cyclic_group(f, n).unwrap()));
            out.push((format!("functions on C{n} over GF({p})"), cyclic_group(f, n).unwrap().dual()));
        }
    }
    for p in [2, 3] {
        let f = gf(p);
        out.push((format!("height two p={p}"), height_two_line(f).unwrap()));
        out.push((format!("divided line p={p}"), divided_line(f).unwrap()));
    }
    out.push(("heisenberg p=2".into(), heisenberg(gf(2)).unwrap()));
    out.push(("A(1,0,1) p=2".into(), example_a(gf(2), 1, 0, 1).unwrap()));
    out.push(("B(1) p=2".into(), example_b(gf(2), 1).unwrap()));
    out.push(("smash demo".into(), smash_demo().unwrap()));
    out.push(("smash trivial".into(), smash_trivial().unwrap()));
    out
}

fn enumerable(h: &HopfAlgebra, dim: usize) -> bool {
    (h.field().p() as u64).checked_pow(dim as u32).is_some_and(|t| t <= ENUM_LIMIT)
}

/// Every vector of `GF(p)^n` in a fixed order.
fn all_vectors(p: u32, n: usize) -> impl Iterator<Item = Vector> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let c = (idx % p as u64) as u32;
                idx /= p as u64;
                c
            })
            .collect()
    })
}

fn dense_tensor(h: &HopfAlgebra, a: &[u32], b: &[u32]) -> Vector {
    let f = h.field();
    let n = h.dim();
    let mut out = vec![0; n * n];
    for (j, &x) in a.iter().enumerate().filter(|e| *e.1 != 0) {
        for (k, &y) in b.iter().enumerate().filter(|e| *e.1 != 0) {
            out[j * n + k] = f.add(out[j * n + k], f.mul(x, y));
        }
    }
    out
}

fn delta_dense(h: &HopfAlgebra, v: &[u32]) -> Vector {
    h.comultiply(v).to_dense(h.dim() * h.dim())
}

fn is_nilpotent_by_powers(h: &HopfAlgebra, v: &[u32]) -> bool {
    let mut cur = v.to_vec();
    for _ in 0..h.dim() {
        cur = h.multiply(&cur, v).unwrap();
    }
    cur.iter().all(|&c| c == 0)
}

#[test]
fn locality_matches_elementwise_nilpotency() {
    let mut checked = 0;
    for (name, h) in small_fixtures() {
        let aug = h.augmentation_ideal();
        if !enumerable(&h, aug.dim()) {
            continue;
        }
        let all_nilpotent = all_vectors(h.field().p(), aug.dim()).all(|c| is_nilpotent_by_powers(&h, &aug.combine(&c)));
        assert_eq!(is_local(&h).is_local, all_nilpotent, "{name}");
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} fixtures enumerated");
}

#[test]
fn group_likes_match_enumeration() {
    for (name, h) in small_fixtures() {
        if !enumerable(&h, h.dim()) {
            continue;
        }
        let n = h.dim();
        let found: Vec<Vector> = all_vectors(h.field().p(), n)
            .filter(|v| h.counit_of(v) == 1 && delta_dense(&h, v) == dense_tensor(&h, v, v))
            .collect();
        let g = group_likes(&h).unwrap();
        assert_eq!(g.len(), found.len(), "{name}");
        for e in &g.elements {
            assert!(found.contains(e), "{name}: {e:?} is not group-like");
        }
        assert_eq!(g.elements[0], h.unit().to_vec());
    }
}

#[test]
fn group_likes_of_dual_are_characters() {
    let mut checked = 0;
    for (name, h) in small_fixtures() {
        if !enumerable(&h, h.dim()) {
            continue;
        }
        let n = h.dim();
        let f = h.field();
        let products: Vec<Vector> =
            (0..n * n).map(|ij| h.multiply(&basis_vector(n, ij / n), &basis_vector(n, ij % n)).unwrap()).collect();
        // algebra maps H -> GF(p), as coordinate functionals
        let characters = all_vectors(h.field().p(), n)
            .filter(|phi| {
                f.dot(phi, h.unit()) == 1
                    && (0..n * n).all(|ij| f.dot(phi, &products[ij]) == f.mul(phi[ij / n], phi[ij % n]))
            })
            .count();
        match group_likes(&h.dual()) {
            Ok(g) => {
                assert_eq!(g.len(), characters, "{name}");
                checked += 1;
            }
            Err(Error::Unsupported(_)) => assert!(!h.is_commutative(), "{name}"),
            Err(e) => panic!("{name}: {e}"),
        }
    }
    assert!(checked >= 20, "only {checked} fixtures checked");
}

#[test]
fn primitive_dimension_matches_enumeration() {
    for (name, h) in small_fixtures() {
        if !enumerable(&h, h.dim()) {
            continue;
        }
        let unit = h.unit().to_vec();
        let count = all_vectors(h.field().p(), h.dim())
            .filter(|v| {
                let mut rhs = dense_tensor(&h, v, &unit);
                let other = dense_tensor(&h, &unit, v);
                let f = h.field();
                for (a, b) in rhs.iter_mut().zip(other) {
                    *a = f.add(*a, b);
                }
                delta_dense(&h, v) == rhs
            })
            .count() as u64;
        let d = primitives(&h).unwrap().dim() as u32;
        assert_eq!(count, (h.field().p() as u64).pow(d), "{name}");
    }
}

#[test]
fn coradical_methods_agree_and_match_known_chains() {
    for (name, h) in small_fixtures() {
        let dual = coradical_filtration_dual(&h).unwrap();
        let direct = coradical_filtration_direct(&h, &dual.terms[0]).unwrap();
        assert!(dual.same_terms(&direct), "{name}");
        assert_eq!(is_connected(&h), dual.terms[0].dim() == 1, "{name}");
    }
    // t primitive with t^4 = 0 over GF(2): t and t^2 are primitive
    assert_eq!(coradical_filtration_dual(&height_two_line(gf(2)).unwrap()).unwrap().dims(), vec![1, 3, 4]);
    for p in [2, 3, 5] {
        // functions on C_p: the dual radical is generated by g - 1
        let fun = cyclic_group(gf(p), p as usize).unwrap().dual();
        let expected: Vec<usize> = (1..=p as usize).collect();
        assert_eq!(coradical_filtration_dual(&fun).unwrap().dims(), expected);
        // p does not divide 2^k + 1 style orders: semisimple group algebras are cosemisimple duals
        let k = cyclic_group(gf(p), p as usize + 1).unwrap();
        assert_eq!(coradical_filtration_dual(&k).unwrap().dims(), vec![p as usize + 1]);
    }
}

#[test]
fn presentations_satisfy_their_relations() {
    for p in [2, 3] {
        let f = gf(p);
        let e = |h: &HopfAlgebra, g: u32| basis_vector(h.dim(), (p as usize).pow(g));
        let comb = |h: &HopfAlgebra, terms: &[(Vector, u32)]| {
            let mut out = vec![0; h.dim()];
            for (v, c) in terms {
                f.axpy(&mut out, *c, v);
            }
            out
        };
        for (s, l, m) in example_a_parameters(f) {
            let h = example_a(f, s, l, m).unwrap();
            assert_eq!(h.dim(), (p as usize).pow(3));
            let (x, y, z) = (e(&h, 0), e(&h, 1), e(&h, 2));
            let bracket = |a: &Vector, b: &Vector| {
                let ab = h.multiply(a, b).unwrap();
                let ba = h.multiply(b, a).unwrap();
                comb(&h, &[(ab, 1), (ba, f.neg(1))])
            };
            assert_eq!(bracket(&x, &y), vec![0; h.dim()]);
            assert_eq!(bracket(&x, &z), comb(&h, &[(x.clone(), s)]));
            assert_eq!(bracket(&y, &z), comb(&h, &[(y.clone(), f.sub(1, s))]));
            assert_eq!(h.algebra().pow(&x, p as u64).unwrap(), vec![0; h.dim()]);
            assert_eq!(h.algebra().pow(&z, p as u64).unwrap(), comb(&h, &[(z.clone(), 1), (x.clone(), l), (y.clone(), m)]));
            let xy = h.multiply(&x, &y).unwrap();
            assert_eq!(h.antipode_of(&z), comb(&h, &[(z.clone(), f.neg(1)), (xy, 1)]));
            let mut dz = dense_tensor(&h, &z, h.unit());
            for (a, b) in dz.iter_mut().zip(dense_tensor(&h, h.unit(), &z)) {
                *a = f.add(*a, b);
            }
            for (a, b) in dz.iter_mut().zip(dense_tensor(&h, &x, &y)) {
                *a = f.add(*a, b);
            }
            assert_eq!(delta_dense(&h, &z), dz);
        }
        for s in 0..p {
            let h = example_b(f, s).unwrap();
            let (x, y, z) = (e(&h, 0), e(&h, 1), e(&h, 2));
            let xz = h.multiply(&x, &z).unwrap();
            let zx = h.multiply(&z, &x).unwrap();
            assert_eq!(comb(&h, &[(xz, 1), (zx, f.neg(1))]), comb(&h, &[(x.clone(), 1), (y.clone(), s)]));
            assert_eq!(h.algebra().pow(&x, p as u64).unwrap(), y);
            assert_eq!(h.algebra().pow(&z, p as u64).unwrap(), z);
            assert!(!h.is_cocommutative());
        }
    }
}

#[test]
fn heisenberg_center_matches_commutator_kernel() {
    {
        let p = 2;
        let f = gf(p);
        let h = heisenberg(f).unwrap();
        let n = h.dim();
        let commutator = |v: &[u32], i: usize| {
            let b = basis_vector(n, i);
            let mut c = h.multiply(v, &b).unwrap();
            let d = h.multiply(&b, v).unwrap();
            f.axpy(&mut c, f.neg(1), &d);
            c
        };
        let center_size = all_vectors(p, n).filter(|v| (0..n).all(|i| commutator(v, i).iter().all(|&c| c == 0))).count();
        let images: Vec<SparseVec> = (0..n)
            .map(|j| {
                let v = basis_vector(n, j);
                SparseVec::from_dense(&(0..n).flat_map(|i| commutator(&v, i)).collect::<Vec<_>>())
            })
            .collect();
        let center = kernel_of_images(f, n * n, &images);
        assert_eq!(center_size as u64, (p as u64).pow(center.dim() as u32));
        let z = basis_vector(n, (p as usize).pow(2));
        let kz = h.algebra().generated_subalgebra(&[z], true).unwrap();
        assert!(kz.is_subspace_of(&center));
        assert!(h.is_normal_hopf_subalgebra(&kz));
        assert_eq!(kz, Subspace::span(f, n, (0..p as usize).map(|k| basis_vector(n, k * (p as usize).pow(2)))));
    }
}
