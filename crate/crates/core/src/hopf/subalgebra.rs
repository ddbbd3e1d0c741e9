use super::HopfAlgebra;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gfp::{SparseVec, Subspace, Vector};

/// A Hopf subalgebra together with its induced Hopf structure on the
/// canonical basis of the subspace.
///
/// Coordinates in `hopf` are coefficients on the canonical (reduced row
/// echelon) basis of `space`, which are read off at the pivot columns.
#[derive(Clone, Debug)]
pub struct HopfSubalgebra {
    pub space: Subspace,
    pub hopf: HopfAlgebra,
}

impl HopfSubalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Parent-algebra vector for handle coordinates.
    pub fn embed(&self, coords: &[u32]) -> Vector {
        self.space.combine(coords)
    }

    /// Express a subspace of the parent contained in `space` in handle
    /// coordinates.
    pub fn restrict(&self, s: &Subspace) -> Result<Subspace> {
        let coords: Option<Vec<Vector>> = s.basis().iter().map(|v| self.space.coordinates(v)).collect();
        let coords = coords.ok_or_else(|| Error::Precondition("subspace is not contained in the Hopf subalgebra".into()))?;
        Ok(Subspace::span(self.space.field(), self.space.dim(), coords))
    }

    /// Image in the parent of a subspace given in handle coordinates.
    pub fn extend(&self, s: &Subspace) -> Subspace {
        Subspace::span(self.space.field(), self.space.ambient(), s.basis().iter().map(|c| self.embed(c)))
    }
}

impl HopfAlgebra {
    /// Induced Hopf structure on a Hopf subalgebra. Fails with
    /// [`Error::NotHopfSubalgebra`] if `space` is not one; the induced
    /// structure is verified before returning.
    pub fn hopf_subalgebra(&self, space: &Subspace) -> Result<HopfSubalgebra> {
        self.require_verified()?;
        if !self.is_hopf_subalgebra(space) {
            return Err(Error::NotHopfSubalgebra);
        }
        let f = self.field();
        let n = self.dim();
        let d = space.dim();
        let pivots = space.pivots().to_vec();
        let basis: Vec<SparseVec> = space.basis().iter().map(|r| SparseVec::from_dense(r)).collect();
        let coords = |v: &[u32]| -> SparseVec {
            SparseVec::from_dense(&pivots.iter().map(|&c| v[c]).collect::<Vec<_>>())
        };
        let mut mult = Vec::with_capacity(d * d);
        for a in &basis {
            for b in &basis {
                mult.push(coords(&self.alg.mul_sparse(a, b)));
            }
        }
        let unit: Vector = pivots.iter().map(|&c| self.unit()[c]).collect();
        let alg = Algebra::new(f, d, mult, unit)?;
        // column position of each parent pivot inside the handle basis
        let mut slot = vec![usize::MAX; n];
        for (r, &c) in pivots.iter().enumerate() {
            slot[c] = r;
        }
        let comult = space
            .basis()
            .iter()
            .map(|b| {
                let delta = self.comultiply(b);
                let entries = delta
                    .iter()
                    .filter_map(|(idx, c)| {
                        let (x, y) = (slot[idx / n], slot[idx % n]);
                        (x != usize::MAX && y != usize::MAX).then_some(((x * d + y) as u32, c))
                    })
                    .collect();
                SparseVec::from_sorted_unchecked(entries)
            })
            .collect();
        let counit = space.basis().iter().map(|b| self.counit_of(b)).collect();
        let antipode = space.basis().iter().map(|b| coords(&self.antipode_of(b))).collect();
        let labels = space
            .basis()
            .iter()
            .enumerate()
            .map(|(r, b)| {
                let nz: Vec<usize> = b.iter().enumerate().filter(|e| *e.1 != 0).map(|e| e.0).collect();
                match nz.as_slice() {
                    [i] if b[*i] == 1 => self.labels()[*i].clone(),
                    _ => format!("u{r}"),
                }
            })
            .collect();
        let hopf = HopfAlgebra::from_parts(alg, comult, counit, antipode, labels, format!("Hopf subalgebra of [{}]", self.meta()))?
            .into_verified()?;
        Ok(HopfSubalgebra { space: space.clone(), hopf })
    }
}
