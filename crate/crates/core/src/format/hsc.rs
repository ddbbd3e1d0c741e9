//! `hsc/1`: Hopf algebras as sparse structure constants.
//!
//! A JSON object with the keys `format`, `p`, `dim`, `labels`, `unit`,
//! `counit`, `mult`, `comult`, `antipode`, `meta`. `mult` holds quadruples
//! `[i, j, k, c]` (`e_i·e_j` has coefficient `c` on `e_k`), `comult` holds
//! quadruples `[i, j, k, c]` (`Δe_i` has coefficient `c` on `e_j⊗e_k`) and
//! `antipode` holds triples `[i, j, c]` (`S e_i` has coefficient `c` on
//! `e_j`). Coefficients lie in `[1, p)`. The canonical writer sorts tuples
//! lexicographically and puts one tuple per line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gfp::{Field, SparseVec};
use crate::hopf::HopfAlgebra;

pub const HSC_TAG: &str = "hsc/1";

/// Largest dimension accepted on load.
pub const MAX_HSC_DIM: usize = 512;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HscDocument {
    format: String,
    p: u32,
    dim: usize,
    labels: Vec<String>,
    unit: Vec<u64>,
    counit: Vec<u64>,
    mult: Vec<[u64; 4]>,
    comult: Vec<[u64; 4]>,
    antipode: Vec<[u64; 3]>,
    #[serde(default)]
    meta: String,
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn write_tuples<const N: usize>(out: &mut String, key: &str, rows: &[[u64; N]], last: bool) {
    if rows.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{}", if last { "" } else { "," });
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (n, row) in rows.iter().enumerate() {
        let body: Vec<String> = row.iter().map(u64::to_string).collect();
        let sep = if n + 1 == rows.len() { "" } else { "," };
        let _ = writeln!(out, "    [{}]{sep}", body.join(", "));
    }
    let _ = writeln!(out, "  ]{}", if last { "" } else { "," });
}

fn dense_list(v: &[u32]) -> String {
    let body: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", body.join(", "))
}

/// Canonical `hsc/1` text.
pub fn to_hsc(h: &HopfAlgebra) -> String {
    let n = h.dim();
    let mut mult = Vec::new();
    for (ij, prod) in h.algebra().mult_table().iter().enumerate() {
        for (k, c) in prod.iter() {
            mult.push([(ij / n) as u64, (ij % n) as u64, k as u64, c as u64]);
        }
    }
    let mut comult = Vec::new();
    for (i, d) in h.comult().iter().enumerate() {
        for (t, c) in d.iter() {
            comult.push([i as u64, (t / n) as u64, (t % n) as u64, c as u64]);
        }
    }
    let mut antipode = Vec::new();
    for (i, s) in h.antipode_images().iter().enumerate() {
        for (j, c) in s.iter() {
            antipode.push([i as u64, j as u64, c as u64]);
        }
    }
    let labels: Vec<String> = h.labels().iter().map(|l| json_string(l)).collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": {},", json_string(HSC_TAG));
    let _ = writeln!(out, "  \"p\": {},", h.field().p());
    let _ = writeln!(out, "  \"dim\": {n},");
    let _ = writeln!(out, "  \"labels\": [{}],", labels.join(", "));
    let _ = writeln!(out, "  \"unit\": {},", dense_list(h.unit()));
    let _ = writeln!(out, "  \"counit\": {},", dense_list(h.counit()));
    write_tuples(&mut out, "mult", &mult, false);
    write_tuples(&mut out, "comult", &comult, false);
    write_tuples(&mut out, "antipode", &antipode, false);
    let _ = writeln!(out, "  \"meta\": {}", json_string(h.meta()));
    out.push_str("}\n");
    out
}

fn range(msg: String) -> Error {
    Error::Range(msg)
}

/// Collect tuples into one sparse vector per row, rejecting out-of-range
/// indices, coefficients outside `[1, p)` and repeated keys.
fn rows_from_tuples<const N: usize>(
    what: &str,
    tuples: &[[u64; N]],
    bounds: [u64; N],
    p: u32,
    rows: usize,
    key_to_row_col: impl Fn(&[u64; N]) -> (usize, u32),
) -> Result<Vec<SparseVec>> {
    let f = Field::new(p)?;
    let mut seen = BTreeSet::new();
    let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); rows];
    for (n, t) in tuples.iter().enumerate() {
        for a in 0..N - 1 {
            if t[a] >= bounds[a] {
                return Err(range(format!("{what} entry {n}: index {} out of range 0..{}", t[a], bounds[a])));
            }
        }
        let c = t[N - 1];
        if c == 0 || c >= p as u64 {
            return Err(range(format!("{what} entry {n}: coefficient {c} not in [1, {p})")));
        }
        let key: Vec<u64> = t[..N - 1].to_vec();
        if !seen.insert(key.clone()) {
            return Err(Error::Parse(format!("{what} entry {n}: duplicate key {key:?}")));
        }
        let (row, col) = key_to_row_col(t);
        out[row].push((col, c as u32));
    }
    Ok(out.into_iter().map(|e| SparseVec::from_entries(&f, e)).collect())
}

fn dense_residues(what: &str, v: &[u64], p: u32, dim: usize) -> Result<Vec<u32>> {
    if v.len() != dim {
        return Err(range(format!("{what} has {} entries, expected {dim}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, &c)| {
            if c < p as u64 {
                Ok(c as u32)
            } else {
                Err(range(format!("{what}[{i}] = {c} is not a residue mod {p}")))
            }
        })
        .collect()
}

/// Parse `hsc/1` text into an unverified Hopf algebra.
pub fn from_hsc(text: &str) -> Result<HopfAlgebra> {
    let doc: HscDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.format != HSC_TAG {
        return Err(Error::Parse(format!("format tag {:?}, expected {HSC_TAG:?}", doc.format)));
    }
    let f = Field::new(doc.p)?;
    let (p, n) = (doc.p, doc.dim);
    if n == 0 {
        return Err(range("dimension must be positive".into()));
    }
    if n > MAX_HSC_DIM {
        return Err(Error::Unsupported(format!("dimension {n} exceeds {MAX_HSC_DIM}")));
    }
    if doc.labels.len() != n {
        return Err(range(format!("{} labels for dimension {n}", doc.labels.len())));
    }
    let unit = dense_residues("unit", &doc.unit, p, n)?;
    let counit = dense_residues("counit", &doc.counit, p, n)?;
    let nu = n as u64;
    let mult = rows_from_tuples("mult", &doc.mult, [nu, nu, nu, 0], p, n * n, |t| {
        ((t[0] * nu + t[1]) as usize, t[2] as u32)
    })?;
    let comult = rows_from_tuples("comult", &doc.comult, [nu, nu, nu, 0], p, n, |t| {
        (t[0] as usize, (t[1] * nu + t[2]) as u32)
    })?;
    let antipode = rows_from_tuples("antipode", &doc.antipode, [nu, nu, 0], p, n, |t| (t[0] as usize, t[1] as u32))?;
    let alg = Algebra::new(f, n, mult, unit)?;
    HopfAlgebra::from_parts(alg, comult, counit, antipode, doc.labels, doc.meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cyclic_group, heisenberg, smash_demo};

    #[test]
    fn round_trip_is_byte_identical() {
        for h in [cyclic_group(Field::new(2).unwrap(), 3).unwrap(), smash_demo().unwrap(), heisenberg(Field::new(2).unwrap()).unwrap()] {
            let text = to_hsc(&h);
            let back = from_hsc(&text).unwrap();
            assert_eq!(back, h);
            assert_eq!(back.labels(), h.labels());
            assert_eq!(to_hsc(&back), text);
        }
    }

    #[test]
    fn key_order_does_not_matter() {
        let text = "{\"meta\": \"\", \"antipode\": [[0,0,1],[1,1,1]], \"comult\": [[0,0,0,1],[1,1,1,1]], \
                    \"mult\": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]], \"counit\": [1,1], \"unit\": [1,0], \
                    \"labels\": [\"1\",\"g\"], \"dim\": 2, \"p\": 3, \"format\": \"hsc/1\"}";
        let h = from_hsc(text).unwrap().into_verified().unwrap();
        assert_eq!(h, cyclic_group(Field::new(3).unwrap(), 2).unwrap());
    }

    #[test]
    fn rejects_malformed_documents() {
        let good = to_hsc(&cyclic_group(Field::new(3).unwrap(), 2).unwrap());
        let truncated = &good[..good.len() / 2];
        let e = from_hsc(truncated).unwrap_err();
        assert!(matches!(e, Error::Parse(ref m) if m.contains("line")), "{e}");
        let zero_coeff = good.replacen("[0, 0, 0, 1]", "[0, 0, 0, 0]", 1);
        assert!(matches!(from_hsc(&zero_coeff), Err(Error::Range(_))));
        let big_index = good.replacen("[0, 0, 0, 1]", "[0, 0, 5, 1]", 1);
        assert!(matches!(from_hsc(&big_index), Err(Error::Range(_))));
        let dup = good.replacen("[0, 1, 1, 1]", "[0, 0, 0, 2]", 1);
        assert!(matches!(from_hsc(&dup), Err(Error::Parse(_))));
        let tag = good.replacen("hsc/1", "hsc/2", 1);
        assert!(matches!(from_hsc(&tag), Err(Error::Parse(_))));
        let extra = good.replacen("\"meta\"", "\"extra\": 1, \"meta\"", 1);
        assert!(matches!(from_hsc(&extra), Err(Error::Parse(_))));
        let prime = good.replacen("\"p\": 3", "\"p\": 4", 1);
        assert!(matches!(from_hsc(&prime), Err(Error::InvalidPrime(4))));
    }

    #[test]
    fn loads_unverified_and_keeps_faults() {
        let good = to_hsc(&cyclic_group(Field::new(3).unwrap(), 2).unwrap());
        // S(g) = 2g breaks the antipode axiom but is well-formed
        let broken = good.replacen("[1, 1, 1]", "[1, 1, 2]", 1);
        let h = from_hsc(&broken).unwrap();
        assert!(!h.is_verified());
        let r = h.verify_axioms();
        assert!(!r.overall);
        assert!(r.failures().all(|c| c.witness.is_some()));
    }
}
