//! Polynomial expressions in non-commuting generators with scalar
//! parameters, as used by presentation documents.
//!
//! Grammar: sums and differences of products; a product is a sequence of
//! factors joined by `*` or juxtaposition; a factor is an integer, a
//! parameter, a generator or a parenthesized expression, optionally raised
//! to a non-negative integer power with `^`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gfp::Field;

/// Words (generator index sequences) with non-zero coefficients.
pub type Poly = BTreeMap<Vec<usize>, u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Num(u64),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("number too large at offset {start} in {src:?}")))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(&src[start..i])));
                continue;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} at offset {start} in {src:?}"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Names in scope while parsing.
pub struct Scope<'a> {
    pub field: Field,
    pub generators: &'a [String],
    pub parameters: &'a BTreeMap<String, u32>,
}

struct Parser<'s, 'a> {
    src: &'s str,
    toks: Vec<(usize, Tok<'s>)>,
    pos: usize,
    scope: &'a Scope<'a>,
}

impl<'s> Parser<'s, '_> {
    fn peek(&self) -> Option<Tok<'s>> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn err(&self, what: &str) -> Error {
        match self.toks.get(self.pos) {
            Some((off, _)) => Error::Parse(format!("{what} at offset {off} in {:?}", self.src)),
            None => Error::Parse(format!("{what} at end of {:?}", self.src)),
        }
    }

    fn add_into(&self, acc: &mut Poly, other: Poly, negate: bool) {
        let f = self.scope.field;
        for (w, c) in other {
            let c = if negate { f.neg(c) } else { c };
            let e = acc.entry(w).or_insert(0);
            *e = f.add(*e, c);
        }
        acc.retain(|_, c| *c != 0);
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let f = self.scope.field;
        let mut out = Poly::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let w: Vec<usize> = wa.iter().chain(wb).copied().collect();
                let e = out.entry(w).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            self.add_into(&mut acc, t, negate);
            negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Open) => {}
                _ => return Ok(acc),
            }
            let next = self.factor()?;
            acc = self.mul(&acc, &next);
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let f = self.scope.field;
        let base = match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                constant(f.reduce(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(g) = self.scope.generators.iter().position(|g| g == name) {
                    Poly::from([(vec![g], 1)])
                } else if let Some(&v) = self.scope.parameters.get(name) {
                    constant(v % f.p())
                } else {
                    self.pos -= 1;
                    return Err(self.err(&format!("unknown name {name:?}")));
                }
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(Tok::Close) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.err("expected a number, name or '('")),
        };
        if self.peek() != Some(Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.peek() {
            Some(Tok::Num(e)) if e <= 64 => e,
            _ => return Err(self.err("expected an exponent between 0 and 64")),
        };
        self.pos += 1;
        let mut out = constant(1);
        for _ in 0..e {
            out = self.mul(&out, &base);
        }
        Ok(out)
    }
}

fn constant(c: u32) -> Poly {
    let mut p = Poly::new();
    if c != 0 {
        p.insert(Vec::new(), c);
    }
    p
}

pub fn parse_poly(src: &str, scope: &Scope<'_>) -> Result<Poly> {
    let toks = tokenize(src)?;
    let mut parser = Parser { src, toks, pos: 0, scope };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("unexpected token"));
    }
    Ok(out)
}

/// Render with the given generator names; the zero polynomial is `0`.
pub fn format_poly(poly: &Poly, generators: &[String]) -> String {
    let mut out = String::new();
    for (w, &c) in poly {
        let word = format_word(w, generators);
        let term = match (c, word.is_empty()) {
            (c, true) => c.to_string(),
            (1, false) => word,
            (c, false) => format!("{c} {word}"),
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `x y^2 z`, with runs of a repeated generator collapsed into powers.
pub fn format_word(w: &[usize], generators: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &generators[w[i]];
        parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
        i = j;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scope_with<'a>(gens: &'a [String], params: &'a BTreeMap<String, u32>) -> Scope<'a> {
        Scope { field: Field::new(3).unwrap(), generators: gens, parameters: params }
    }

    #[test]
    fn parses_sums_products_and_powers() {
        let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let params = BTreeMap::from([("sigma".to_string(), 2)]);
        let s = scope_with(&gens, &params);
        let p = parse_poly("-z + x y + sigma*y^2", &s).unwrap();
        assert_eq!(p, Poly::from([(vec![2], 2), (vec![0, 1], 1), (vec![1, 1], 2)]));
        let q = parse_poly("(1 - sigma) y", &s).unwrap();
        assert_eq!(q, Poly::from([(vec![1], 2)]));
        assert_eq!(parse_poly("3 x", &s).unwrap(), Poly::new());
        assert_eq!(parse_poly("(x + y)^2", &s).unwrap().len(), 4);
        assert_eq!(parse_poly("x^0", &s).unwrap(), constant(1));
    }

    #[test]
    fn reports_positions() {
        let gens = vec!["x".to_string()];
        let params = BTreeMap::new();
        let s = scope_with(&gens, &params);
        let e = parse_poly("x + w", &s).unwrap_err().to_string();
        assert!(e.contains("offset 4"), "{e}");
        assert!(parse_poly("(x", &s).is_err());
        assert!(parse_poly("x +", &s).is_err());
        assert!(parse_poly("x $", &s).is_err());
    }

    #[test]
    fn format_then_parse_round_trips() {
        let gens: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let params = BTreeMap::new();
        let s = scope_with(&gens, &params);
        for src in ["0", "1", "2 x^2 y + y x", "x y x + 2"] {
            let p = parse_poly(src, &s).unwrap();
            assert_eq!(parse_poly(&format_poly(&p, &gens), &s).unwrap(), p);
        }
    }
}
