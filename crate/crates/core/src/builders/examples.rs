//! Named fixtures: the one-generator lines, Heisenberg, the two
//! non-cocommutative families and two small smash products.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gfp::{Field, SparseVec};
use crate::hopf::HopfAlgebra;

use super::group::{group_algebra, GroupTable};
use super::pbw::{presentation_hopf, LinearForm, Presentation, TailTerm};
use super::smash::smash_product;

/// `GF(p)[t]/(t^p)`, `t` primitive.
pub fn truncated_line(f: Field) -> Result<HopfAlgebra> {
    let mut pres = Presentation::free(f, &["t"]);
    pres.meta = format!("truncated line t^p = 0 over {f}");
    presentation_hopf(&pres)
}

/// `GF(p)[x]/(x^p - x)`, `x` primitive.
pub fn witt_line(f: Field) -> Result<HopfAlgebra> {
    let mut pres = Presentation::free(f, &["x"]);
    pres.powers[0] = Some(LinearForm::generator(0, 1));
    pres.meta = format!("line with x^p = x over {f}");
    presentation_hopf(&pres)
}

/// `GF(p)[x]/(x^{p²})` presented as `u(span{x, y})` with `x^[p] = y`,
/// `y^[p] = 0`.
pub fn height_two_line(f: Field) -> Result<HopfAlgebra> {
    let mut pres = Presentation::free(f, &["x", "y"]);
    pres.powers[0] = Some(LinearForm::generator(1, 1));
    pres.meta = format!("abelian restricted algebra x^p = y, y^p = 0 over {f}");
    presentation_hopf(&pres)
}

/// Divided powers `γ_0, …, γ_{p²-1}`: `γ_i γ_j = C(i+j, i) γ_{i+j}`,
/// `Δγ_n = Σ γ_i ⊗ γ_{n-i}`, `S(γ_n) = (-1)^n γ_n`.
pub fn divided_line(f: Field) -> Result<HopfAlgebra> {
    let n = (f.p() * f.p()) as usize;
    let binom = |a: usize, b: usize| -> u32 {
        // Lucas' theorem, base p
        let p = f.p() as usize;
        let (mut a, mut b, mut c) = (a, b, 1u32);
        while a > 0 || b > 0 {
            let (ad, bd) = (a % p, b % p);
            if bd > ad {
                return 0;
            }
            let mut small = 1u64;
            for k in 0..bd {
                small = small * (ad - k) as u64 / (k + 1) as u64;
            }
            c = f.mul(c, f.reduce(small));
            a /= p;
            b /= p;
        }
        c
    };
    let mut mult = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mult.push(if i + j < n {
                SparseVec::from_entries(&f, vec![((i + j) as u32, binom(i + j, i))])
            } else {
                SparseVec::new()
            });
        }
    }
    let mut unit = vec![0; n];
    unit[0] = 1;
    let alg = Algebra::new(f, n, mult, unit)?;
    let comult = (0..n)
        .map(|m| SparseVec::from_sorted_unchecked((0..=m).map(|i| ((i * n + m - i) as u32, 1)).collect()))
        .collect();
    let antipode = (0..n)
        .map(|m| SparseVec::from_entries(&f, vec![(m as u32, if m % 2 == 0 { 1 } else { f.neg(1) })]))
        .collect();
    let mut counit = vec![0; n];
    counit[0] = 1;
    let labels = (0..n).map(|m| if m == 0 { "1".to_string() } else { format!("γ{m}") }).collect();
    HopfAlgebra::from_parts(alg, comult, counit, antipode, labels, format!("divided power line of dim {n} over {f}"))?
        .into_verified()
}

/// `u(𝔥)` for the Heisenberg algebra: `[x, y] = z`, `z` central, trivial
/// p-map.
pub fn heisenberg(f: Field) -> Result<HopfAlgebra> {
    let mut pres = Presentation::free(f, &["x", "y", "z"]);
    pres.set_bracket(0, 1, LinearForm::generator(2, 1));
    pres.meta = format!("restricted enveloping algebra of the Heisenberg algebra over {f}");
    presentation_hopf(&pres)
}

fn check_a_params(f: Field, sigma: u32, lambda: u32, mu: u32) -> Result<()> {
    let p = f.p();
    if sigma >= p || lambda >= p || mu >= p {
        return Err(Error::Range("parameters must be residues mod p".into()));
    }
    if f.pow(sigma, p as u64) != sigma {
        return Err(Error::Precondition("sigma^p != sigma".into()));
    }
    if f.mul(lambda, sigma) != 0 {
        return Err(Error::Precondition("lambda*sigma != 0".into()));
    }
    if f.mul(f.sub(1, sigma), mu) != 0 {
        return Err(Error::Precondition("(1-sigma)*mu != 0".into()));
    }
    Ok(())
}

/// The presentation of `A(σ, λ, μ)` with no parameter checks.
pub fn example_a_presentation(f: Field, sigma: u32, lambda: u32, mu: u32) -> Presentation {
    let (x, y, z) = (0, 1, 2);
    let mut pres = Presentation::free(f, &["x", "y", "z"]);
    // [x,z] = σx, [y,z] = (1-σ)y
    pres.set_bracket(x, z, LinearForm::generator(x, sigma % f.p()));
    pres.set_bracket(y, z, LinearForm::generator(y, f.sub(1, sigma % f.p())));
    pres.brackets.retain(|_, form| !form.is_zero());
    pres.powers[z] = Some(LinearForm::generator(z, 1).plus(x, lambda % f.p()).plus(y, mu % f.p()));
    pres.tails[z].push(TailTerm { coeff: 1, left: vec![x], right: vec![y] });
    pres.antipode[z] = Some(vec![(vec![z], f.neg(1)), (vec![x, y], 1)]);
    pres.meta = format!("A(sigma={sigma}, lambda={lambda}, mu={mu}) over {f}");
    pres
}

/// `A(σ, λ, μ)`; the parameters must satisfy `σ^p = σ`, `λσ = 0`,
/// `(1-σ)μ = 0`.
pub fn example_a(f: Field, sigma: u32, lambda: u32, mu: u32) -> Result<HopfAlgebra> {
    check_a_params(f, sigma, lambda, mu)?;
    presentation_hopf(&example_a_presentation(f, sigma, lambda, mu))
}

/// All parameter triples accepted by [`example_a`].
pub fn example_a_parameters(f: Field) -> Vec<(u32, u32, u32)> {
    let p = f.p();
    let mut out = Vec::new();
    for s in 0..p {
        for l in 0..p {
            for m in 0..p {
                if check_a_params(f, s, l, m).is_ok() {
                    out.push((s, l, m));
                }
            }
        }
    }
    out
}

pub fn example_b_presentation(f: Field, sigma: u32) -> Presentation {
    let (x, y, z) = (0, 1, 2);
    let s = sigma % f.p();
    let mut pres = Presentation::free(f, &["x", "y", "z"]);
    // [x,z] = x + σy
    pres.set_bracket(x, z, LinearForm::generator(x, 1).plus(y, s));
    pres.powers[x] = Some(LinearForm::generator(y, 1));
    pres.powers[z] = Some(LinearForm::generator(z, 1));
    pres.tails[z].push(TailTerm { coeff: 1, left: vec![x], right: vec![y] });
    if s != 0 {
        pres.tails[z].push(TailTerm { coeff: s, left: vec![y], right: vec![y] });
    }
    let mut s_z = vec![(vec![z], f.neg(1)), (vec![x, y], 1)];
    if s != 0 {
        s_z.push((vec![y, y], s));
    }
    pres.antipode[z] = Some(s_z);
    pres.meta = format!("B(sigma={sigma}) over {f}");
    pres
}

pub fn example_b(f: Field, sigma: u32) -> Result<HopfAlgebra> {
    if sigma >= f.p() {
        return Err(Error::Range("sigma must be a residue mod p".into()));
    }
    presentation_hopf(&example_b_presentation(f, sigma))
}

pub fn cyclic_group(f: Field, n: usize) -> Result<HopfAlgebra> {
    if n == 0 {
        return Err(Error::Range("group order must be positive".into()));
    }
    group_algebra(&GroupTable::cyclic(n), f)
}

/// `GF(3)[t]/(t³) # k[C₂]` with the generator acting by `t ↦ -t`.
pub fn smash_demo() -> Result<HopfAlgebra> {
    let f = Field::new(3)?;
    let a = truncated_line(f)?;
    let g = GroupTable::cyclic(2);
    // t^k ↦ (-1)^k t^k
    let flip = crate::gfp::Matrix::from_rows(f, 3, &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]])?;
    let id = crate::gfp::Matrix::identity(f, 3);
    Ok(smash_product(&a, &g, &[id, flip])?.with_meta("GF(3)[t]/(t^3) # C2, t -> -t"))
}

/// `GF(2)[t]/(t²) # k[C₂]` with trivial action.
pub fn smash_trivial() -> Result<HopfAlgebra> {
    let f = Field::new(2)?;
    let a = truncated_line(f)?;
    let g = GroupTable::cyclic(2);
    let id = crate::gfp::Matrix::identity(f, 2);
    Ok(smash_product(&a, &g, &[id.clone(), id])?.with_meta("GF(2)[t]/(t^2) # C2, trivial action"))
}
