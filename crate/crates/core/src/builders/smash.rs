//! Smash products `A # k[G]` for a group acting on a Hopf algebra by Hopf
//! automorphisms, and seeded random instances of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gfp::{reduce_acc, Field, Matrix, SparseVec, Vector};
use crate::hopf::HopfAlgebra;

use super::group::GroupTable;
use super::pbw::{pbw_algebra_map, presentation_hopf, LinearForm, Presentation};

fn action_witness(a: &HopfAlgebra, rho: &Matrix) -> Option<String> {
    let n = a.dim();
    if rho.rows() != n || rho.cols() != n {
        return Some(format!("matrix is {}x{}, expected {n}x{n}", rho.rows(), rho.cols()));
    }
    if !rho.is_invertible() {
        return Some("not invertible".into());
    }
    if rho.apply(a.unit()) != a.unit() {
        return Some("does not fix the unit".into());
    }
    let cols: Vec<Vector> = (0..n).map(|i| rho.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = rho.apply(&a.algebra().mul_basis(i, j).to_dense(n));
            if lhs != a.multiply(&cols[i], &cols[j]).expect("dims") {
                return Some(format!("not multiplicative on (e{i}, e{j})"));
            }
        }
    }
    let images: Vec<SparseVec> = cols.iter().map(|c| SparseVec::from_dense(c)).collect();
    for (i, col) in cols.iter().enumerate() {
        if a.counit_of(col) != a.counit()[i] {
            return Some(format!("does not preserve the counit on e{i}"));
        }
        let lhs = a.comultiply(col);
        let rhs = a.tensor_apply(&a.comult()[i], &images, &images, n);
        if lhs != rhs {
            return Some(format!("does not commute with comultiplication on e{i}"));
        }
        let s = a.antipode_images()[i].to_dense(n);
        if rho.apply(&s) != a.antipode_of(col) {
            return Some(format!("does not commute with the antipode on e{i}"));
        }
    }
    None
}

/// `A # k[G]` on the basis `e_i # g` (index `i + dim A · g`). `action[g]`
/// is the matrix of `g ▷ -` (column `i` is `g ▷ e_i`).
pub fn smash_product(a: &HopfAlgebra, g: &GroupTable, action: &[Matrix]) -> Result<HopfAlgebra> {
    a.require_verified()?;
    let f = a.field();
    let n = a.dim();
    let order = g.order();
    if action.len() != order {
        return Err(Error::InvalidAction(format!("{} matrices for a group of order {order}", action.len())));
    }
    for (x, rho) in action.iter().enumerate() {
        if let Some(w) = action_witness(a, rho) {
            return Err(Error::InvalidAction(format!("element {}: {w}", g.names()[x])));
        }
    }
    if action[g.identity()] != Matrix::identity(f, n) {
        return Err(Error::InvalidAction("identity does not act trivially".into()));
    }
    for x in 0..order {
        for y in 0..order {
            if action[x].mul(&action[y])? != action[g.mul(x, y)] {
                return Err(Error::InvalidAction(format!(
                    "rho({0})rho({1}) != rho({0}{1})",
                    g.names()[x],
                    g.names()[y]
                )));
            }
        }
    }

    let dim = n * order;
    let idx = |i: usize, x: usize| i + n * x;
    let acted: Vec<Vec<SparseVec>> =
        action.iter().map(|rho| (0..n).map(|j| SparseVec::from_dense(&rho.column(j))).collect()).collect();
    let mut mult = Vec::with_capacity(dim * dim);
    for u in 0..dim {
        let (i, x) = (u % n, u / n);
        for v in 0..dim {
            let (j, y) = (v % n, v / n);
            let mut acc = vec![0u64; n];
            a.algebra().mul_basis_left(i, &acted[x][j], &mut acc);
            let xy = g.mul(x, y);
            let entries = reduce_acc(&f, &acc)
                .into_iter()
                .enumerate()
                .filter(|e| e.1 != 0)
                .map(|(k, c)| (idx(k, xy) as u32, c))
                .collect();
            mult.push(SparseVec::from_sorted_unchecked(entries));
        }
    }
    let mut unit = vec![0; dim];
    for (i, &c) in a.unit().iter().enumerate() {
        unit[idx(i, g.identity())] = c;
    }
    let alg = Algebra::new(f, dim, mult, unit)?;

    let mut comult = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for u in 0..dim {
        let (i, x) = (u % n, u / n);
        let entries = a.comult()[i]
            .iter()
            .map(|(t, c)| ((idx(t / n, x) * dim + idx(t % n, x)) as u32, c))
            .collect();
        comult.push(SparseVec::from_entries(&f, entries));
        counit.push(a.counit()[i]);
        let xi = g.inverse(x);
        let s = action[xi].apply(&a.antipode_images()[i].to_dense(n));
        let entries = s.iter().enumerate().filter(|e| *e.1 != 0).map(|(k, &c)| (idx(k, xi) as u32, c)).collect();
        antipode.push(SparseVec::from_sorted_unchecked(entries));
        let (al, gl) = (&a.labels()[i], &g.names()[x]);
        labels.push(match (al.as_str(), x == g.identity()) {
            (_, true) => al.clone(),
            ("1", false) => gl.clone(),
            _ => format!("{al}#{gl}"),
        });
    }
    let meta = format!("smash product of ({}) with a group of order {order}", a.meta());
    HopfAlgebra::from_parts(alg, comult, counit, antipode, labels, meta)?.into_verified()
}

/// A randomly generated smash product together with its ingredients.
#[derive(Clone, Debug)]
pub struct SmashInstance {
    pub seed: u64,
    pub connected: HopfAlgebra,
    pub group: GroupTable,
    pub hopf: HopfAlgebra,
    pub description: String,
}

fn random_invertible(f: Field, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let rows: Vec<Vector> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..f.p())).collect()).collect();
        let m = Matrix::from_rows(f, d, &rows).expect("square");
        if m.is_invertible() && m != Matrix::identity(f, d) {
            return m;
        }
    }
}

/// Seeded random instance: `A = u(𝔞)` for an abelian restricted Lie
/// algebra `𝔞` of dimension 1 to 3 (p-map zero or the identity), with a
/// cyclic group generated by a random linear automorphism of `𝔞`.
pub fn random_smash_instance(seed: u64) -> Result<SmashInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = if rng.gen_bool(0.5) { 2 } else { 3 };
    let f = Field::new(p)?;
    let d = rng.gen_range(1..=if p == 2 { 3 } else { 2 });
    let restricted = rng.gen_bool(0.5);
    let names = ["x", "y", "z"];
    let mut pres = Presentation::free(f, &names[..d]);
    if restricted {
        for g in 0..d {
            pres.powers[g] = Some(LinearForm::generator(g, 1));
        }
    }
    pres.meta = format!("abelian u({d}) over {f}, p-map {}", if restricted { "identity" } else { "zero" });
    let a = presentation_hopf(&pres)?;
    // p = 2, d = 1 has GL_1 trivial; fall back to the trivial action of C2
    let m = if p == 2 && d == 1 { Matrix::identity(f, 1) } else { random_invertible(f, d, &mut rng) };
    let mut powers = vec![Matrix::identity(f, d)];
    loop {
        let next = powers.last().unwrap().mul(&m)?;
        if next == Matrix::identity(f, d) {
            break;
        }
        powers.push(next);
    }
    let order = powers.len().max(2);
    if powers.len() < order {
        powers.push(Matrix::identity(f, d));
    }
    let group = GroupTable::cyclic(order);
    let p_us = p as usize;
    let action = powers
        .iter()
        .map(|mk| {
            let images: Vec<Vector> = (0..d)
                .map(|g| {
                    let mut v = vec![0; a.dim()];
                    for k in 0..d {
                        v[p_us.pow(k as u32)] = mk.get(k, g);
                    }
                    v
                })
                .collect();
            pbw_algebra_map(&a, d, &images)
        })
        .collect::<Result<Vec<_>>>()?;
    let hopf = smash_product(&a, &group, &action)?;
    let description = format!("seed {seed}: {} # C{order}", a.meta());
    Ok(SmashInstance { seed, connected: a, group, hopf, description })
}
