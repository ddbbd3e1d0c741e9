//! `hpres/1`: presentations by generators and relations.
//!
//! ```text
//! {
//!   "format": "hpres/1",
//!   "p": 3,
//!   "generators": ["x", "y", "z"],
//!   "parameters": {"lambda": 0, "mu": 0, "sigma": 1},
//!   "brackets": [["x", "z", "sigma x"], ["y", "z", "(1 - sigma) y"]],
//!   "powers": {"z": "z + lambda x + mu y"},
//!   "coproduct_tails": {"z": [["x", "y"]]},
//!   "antipode": {"z": "-z + x y"},
//!   "meta": "..."
//! }
//! ```
//!
//! `brackets` entries `[a, b, e]` mean `[a, b] = e`; absent pairs commute.
//! `powers` gives `g^p` (default `0`), `coproduct_tails` lists pairs
//! `[u, v]` with `Δg = g⊗1 + 1⊗g + Σ u⊗v` (bilinear in `u`, `v`), and
//! `antipode` gives `S(g)` (default `-g`). Expressions may use the
//! parameters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expr::{format_poly, format_word, parse_poly, Poly, Scope};
use crate::error::{Error, Result};
use crate::gfp::Field;
use crate::builders::{LinearForm, Presentation, TailTerm, Term};

pub const HPRES_TAG: &str = "hpres/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HpresDocument {
    pub format: String,
    pub p: u32,
    pub generators: Vec<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, u32>,
    #[serde(default)]
    pub brackets: Vec<[String; 3]>,
    #[serde(default)]
    pub powers: BTreeMap<String, String>,
    #[serde(default)]
    pub coproduct_tails: BTreeMap<String, Vec<[String; 2]>>,
    #[serde(default)]
    pub antipode: BTreeMap<String, String>,
    #[serde(default)]
    pub meta: String,
}

impl HpresDocument {
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: HpresDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.format != HPRES_TAG {
            return Err(Error::Parse(format!("format tag {:?}, expected {HPRES_TAG:?}", doc.format)));
        }
        Ok(doc)
    }

    /// Resolve names and expressions into a validated presentation.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let f = Field::new(self.p)?;
        let bad = |m: String| Error::InvalidPresentation(m);
        let d = self.generators.len();
        for (i, g) in self.generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(bad(format!("generator name {g:?} is not an identifier")));
            }
            if self.generators[..i].contains(g) {
                return Err(bad(format!("generator {g:?} declared twice")));
            }
            if self.parameters.contains_key(g) {
                return Err(bad(format!("{g:?} is both a generator and a parameter")));
            }
        }
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let mut pres = Presentation::free(f, &names);
        pres.meta = self.meta.clone();
        let scope = Scope { field: f, generators: &self.generators, parameters: &self.parameters };
        let index = |name: &str| pres_index(&self.generators, name);
        let parse = |what: String, src: &str| {
            parse_poly(src, &scope).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{what}: {m}")),
                other => other,
            })
        };

        let mut seen_pairs = Vec::new();
        for [a, b, e] in &self.brackets {
            let (ia, ib) = (index(a)?, index(b)?);
            if ia == ib {
                return Err(bad(format!("bracket [{a}, {b}] of a generator with itself")));
            }
            let key = (ia.max(ib), ia.min(ib));
            if seen_pairs.contains(&key) {
                return Err(bad(format!("bracket of {a} and {b} given twice")));
            }
            seen_pairs.push(key);
            let form = linear_form(&parse(format!("bracket [{a}, {b}]"), e)?, &format!("bracket [{a}, {b}]"))?;
            if !form.is_zero() {
                pres.set_bracket(ia, ib, form);
            }
        }
        for (g, e) in &self.powers {
            let i = index(g)?;
            let form = linear_form(&parse(format!("power of {g}"), e)?, &format!("power of {g}"))?;
            pres.powers[i] = if form.is_zero() { None } else { Some(form) };
        }
        for (g, pairs) in &self.coproduct_tails {
            let i = index(g)?;
            for [l, r] in pairs {
                let left = parse(format!("coproduct tail of {g}"), l)?;
                let right = parse(format!("coproduct tail of {g}"), r)?;
                for (wl, cl) in &left {
                    for (wr, cr) in &right {
                        pres.tails[i].push(TailTerm { coeff: f.mul(*cl, *cr), left: wl.clone(), right: wr.clone() });
                    }
                }
            }
        }
        for (g, e) in &self.antipode {
            let i = index(g)?;
            let terms: Vec<Term> = parse(format!("antipode of {g}"), e)?.into_iter().collect();
            pres.antipode[i] = Some(terms);
        }
        debug_assert_eq!(pres.rank(), d);
        pres.validate()?;
        Ok(pres)
    }

    /// Numeric document for a presentation.
    pub fn from_presentation(pres: &Presentation) -> Self {
        let gens = &pres.generators;
        let brackets = pres
            .brackets
            .iter()
            .map(|(&(j, i), form)| [gens[j].clone(), gens[i].clone(), format_poly(&form_poly(form), gens)])
            .collect();
        let powers = pres
            .powers
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.as_ref().map(|f| (gens[i].clone(), format_poly(&form_poly(f), gens))))
            .collect();
        let coproduct_tails = pres
            .tails
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(i, tails)| {
                let pairs = tails
                    .iter()
                    .map(|t| {
                        let left = Poly::from([(t.left.clone(), t.coeff)]);
                        [format_poly(&left, gens), word_or_one(&t.right, gens)]
                    })
                    .collect();
                (gens[i].clone(), pairs)
            })
            .collect();
        let antipode = pres
            .antipode
            .iter()
            .enumerate()
            .filter_map(|(i, s)| {
                s.as_ref().map(|terms| {
                    let mut poly = Poly::new();
                    for (w, c) in terms {
                        let e = poly.entry(w.clone()).or_insert(0);
                        *e = pres.field.add(*e, *c);
                    }
                    poly.retain(|_, c| *c != 0);
                    (gens[i].clone(), format_poly(&poly, gens))
                })
            })
            .collect();
        HpresDocument {
            format: HPRES_TAG.into(),
            p: pres.field.p(),
            generators: gens.clone(),
            parameters: BTreeMap::new(),
            brackets,
            powers,
            coproduct_tails,
            antipode,
            meta: pres.meta.clone(),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn pres_index(gens: &[String], name: &str) -> Result<usize> {
    gens.iter()
        .position(|g| g == name)
        .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator {name:?}")))
}

fn word_or_one(w: &[usize], gens: &[String]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        format_word(w, gens)
    }
}

fn form_poly(form: &LinearForm) -> Poly {
    let mut poly = Poly::new();
    if form.constant != 0 {
        poly.insert(Vec::new(), form.constant);
    }
    for &(g, c) in &form.terms {
        if c != 0 {
            poly.insert(vec![g], c);
        }
    }
    poly
}

fn linear_form(poly: &Poly, what: &str) -> Result<LinearForm> {
    let mut form = LinearForm::zero();
    for (w, &c) in poly {
        match w.as_slice() {
            [] => form.constant = c,
            [g] => form.terms.push((*g, c)),
            _ => return Err(Error::InvalidPresentation(format!("{what} must have degree at most 1"))),
        }
    }
    Ok(form)
}

fn symbolic(p: u32, params: &[(&str, u32)], meta: String) -> HpresDocument {
    HpresDocument {
        format: HPRES_TAG.into(),
        p,
        generators: vec!["x".into(), "y".into(), "z".into()],
        parameters: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        brackets: Vec::new(),
        powers: BTreeMap::new(),
        coproduct_tails: BTreeMap::from([("z".to_string(), vec![["x".to_string(), "y".to_string()]])]),
        antipode: BTreeMap::new(),
        meta,
    }
}

/// Family A with the parameters kept symbolic.
pub fn example_a_document(f: Field, sigma: u32, lambda: u32, mu: u32) -> HpresDocument {
    let mut doc = symbolic(
        f.p(),
        &[("sigma", sigma), ("lambda", lambda), ("mu", mu)],
        format!("A(sigma={sigma}, lambda={lambda}, mu={mu}) over {f}"),
    );
    doc.brackets = vec![
        ["x".into(), "z".into(), "sigma x".into()],
        ["y".into(), "z".into(), "(1 - sigma) y".into()],
    ];
    doc.powers.insert("z".into(), "z + lambda x + mu y".into());
    doc.antipode.insert("z".into(), "-z + x y".into());
    doc
}

/// Family B with `σ` kept symbolic.
pub fn example_b_document(f: Field, sigma: u32) -> HpresDocument {
    let mut doc = symbolic(f.p(), &[("sigma", sigma)], format!("B(sigma={sigma}) over {f}"));
    doc.brackets = vec![["x".into(), "z".into(), "x + sigma y".into()]];
    doc.powers.insert("x".into(), "y".into());
    doc.powers.insert("z".into(), "z".into());
    doc.coproduct_tails.insert("z".into(), vec![["x".into(), "y".into()], ["sigma y".into(), "y".into()]]);
    doc.antipode.insert("z".into(), "-z + x y + sigma y^2".into());
    doc
}
