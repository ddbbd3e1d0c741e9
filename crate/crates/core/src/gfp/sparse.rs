use serde::Serialize;

use super::Field;

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zero
/// coefficients. The sorted form is canonical, so derived equality is exact.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SparseVec(Vec<(u32, u32)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(index: usize) -> Self {
        SparseVec(vec![(index as u32, 1)])
    }

    pub fn from_dense(v: &[u32]) -> Self {
        SparseVec(
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        )
    }

    /// Build from unsorted, possibly repeated entries; duplicates are summed.
    pub fn from_entries(field: &Field, mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = field.add(last.1, c % field.p()),
                _ => out.push((i, c % field.p())),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec(out)
    }

    /// Wrap entries that are already sorted, unique and nonzero.
    pub fn from_sorted_unchecked(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec(entries)
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(i, c)| (i as usize, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0
            .binary_search_by_key(&(index as u32), |e| e.0)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self, dim: usize) -> Vec<u32> {
        let mut v = vec![0; dim];
        for &(i, c) in &self.0 {
            v[i as usize] = c;
        }
        v
    }

    /// `acc[i] += c · self[i]` into a lazily reduced `u64` accumulator.
    #[inline]
    pub fn accumulate(&self, acc: &mut [u64], c: u32) {
        for &(i, a) in &self.0 {
            acc[i as usize] += (a * c) as u64;
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|e| e.0 as usize)
    }
}

/// Reduce a `u64` accumulator into residues.
pub fn reduce_acc(field: &Field, acc: &[u64]) -> Vec<u32> {
    acc.iter().map(|&a| field.reduce(a)).collect()
}
