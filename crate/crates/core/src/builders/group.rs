use crate::error::{Error, Result};
use crate::gfp::{Field, SparseVec};
use crate::hopf::HopfAlgebra;
use crate::algebra::Algebra;

/// Multiplication table of a finite group on elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl GroupTable {
    /// Validate a table (`mult[a*order + b] = ab`): closure, associativity,
    /// a two-sided identity and inverses are checked exhaustively.
    pub fn new(order: usize, mult: Vec<usize>, names: Option<Vec<String>>) -> Result<Self> {
        if order == 0 || mult.len() != order * order {
            return Err(Error::InvalidGroupTable(format!("table must have {} entries", order * order)));
        }
        if mult.iter().any(|&x| x >= order) {
            return Err(Error::InvalidGroupTable("entry out of range".into()));
        }
        let m = |a: usize, b: usize| mult[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroupTable(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroupTable("no identity".into()))?;
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| m(a, b) == identity && m(b, a) == identity)
                    .ok_or_else(|| Error::InvalidGroupTable(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = match names {
            Some(n) if n.len() == order => n,
            _ => (0..order).map(|i| format!("g{i}")).collect(),
        };
        Ok(GroupTable { order, mult, identity, inverse, names })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n * n).map(|ab| (ab / n + ab % n) % n).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        GroupTable::new(n, mult, Some(names)).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * other.order + b`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order, other.order);
        let size = n * m;
        let mult = (0..size * size)
            .map(|xy| {
                let (x, y) = (xy / size, xy % size);
                self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
            })
            .collect();
        let names = (0..size).map(|x| format!("({},{})", self.names[x / m], other.names[x % m])).collect();
        GroupTable::new(size, mult, Some(names)).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Group algebra `k[G]`: `Δg = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(t: &GroupTable, field: Field) -> Result<HopfAlgebra> {
    let n = t.order();
    let mult = (0..n * n).map(|ab| SparseVec::unit(t.mul(ab / n, ab % n))).collect();
    let mut unit = vec![0; n];
    unit[t.identity()] = 1;
    let alg = Algebra::new(field, n, mult, unit)?;
    let comult = (0..n).map(|g| SparseVec::unit(g * n + g)).collect();
    let antipode = (0..n).map(|g| SparseVec::unit(t.inverse(g))).collect();
    HopfAlgebra::from_parts(alg, comult, vec![1; n], antipode, t.names().to_vec(), format!("group algebra of order {n} over {field}"))?
        .into_verified()
}
