//! Incremental exact Gaussian elimination over sparse rational vectors.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use crate::polyring::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `acc += c * v`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Rational, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let entry = acc.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += c * x;
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    /// This row as a combination of the inserted vectors.
    combo: SparseVec<usize>,
}

/// The span of a growing list of linearly independent vectors.
///
/// Rows are kept in echelon form with pivot = smallest key and pivot
/// coefficient 1; each row remembers how it was built from the inserted
/// vectors so that coordinates can be recovered.
#[derive(Clone, Debug)]
pub struct LinearSpan<K> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    dim: usize,
}

impl<K: Ord + Clone> Default for LinearSpan<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> LinearSpan<K> {
    pub fn new() -> Self {
        LinearSpan {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            dim: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the rows; returns the residual and the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut residual = v.clone();
        let mut used: SparseVec<usize> = BTreeMap::new();
        let mut cursor: Bound<K> = Bound::Unbounded;
        loop {
            let hit = residual
                .range((cursor.clone(), Bound::Unbounded))
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, c)) = hit else { break };
            let row = &self.rows[self.pivots[&key]];
            axpy(&mut residual, &-c.clone(), &row.vec);
            axpy(&mut used, &c, &row.combo);
            cursor = Bound::Excluded(key);
        }
        (residual, used)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `v` over the inserted vectors, or `None` when `v` is
    /// outside the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Rational>> {
        let (residual, used) = self.reduce(v);
        if !residual.is_empty() {
            return None;
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (i, c) in used {
            out[i] = c;
        }
        Some(out)
    }

    /// Adds `v` if it is independent of the current span and returns its
    /// index among the inserted vectors.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<usize> {
        let (residual, used) = self.reduce(v);
        let (pivot, lead) = residual.iter().next().map(|(k, c)| (k.clone(), c.clone()))?;
        let index = self.dim;
        let inv = Rational::one() / lead;
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(index, inv.clone());
        axpy(&mut combo, &-inv.clone(), &used);
        let vec = residual.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.pivots.insert(pivot.clone(), self.rows.len());
        self.rows.push(Row { pivot, vec, combo });
        self.dim += 1;
        Some(index)
    }

    /// Pivot keys in insertion order.
    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.iter().map(|r| &r.pivot)
    }
}

/// Rank of a list of vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut span = LinearSpan::new();
    for v in vectors {
        span.insert(v);
    }
    span.dim()
}
