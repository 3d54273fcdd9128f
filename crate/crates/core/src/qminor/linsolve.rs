//! Exact Gauss-Jordan elimination over Q(q) on sparse columns.

use std::collections::{BTreeMap, BTreeSet};

use crate::qcoeff::{LaurentQ, RatFuncQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SolveFailure {
    /// The columns are linearly dependent.
    Singular,
    /// The target is outside their span.
    Inconsistent,
}

struct Dense {
    rows: Vec<Vec<RatFuncQ>>,
}

impl Dense {
    fn build<K: Ord>(columns: &[&BTreeMap<K, LaurentQ>], target: Option<&BTreeMap<K, LaurentQ>>) -> Self {
        let keys: BTreeSet<&K> =
            columns.iter().flat_map(|c| c.keys()).chain(target.into_iter().flat_map(|t| t.keys())).collect();
        let width = columns.len() + usize::from(target.is_some());
        let rows = keys
            .into_iter()
            .map(|k| {
                let mut row = Vec::with_capacity(width);
                for c in columns {
                    row.push(c.get(k).map(RatFuncQ::from).unwrap_or_else(RatFuncQ::zero));
                }
                if let Some(t) = target {
                    row.push(t.get(k).map(RatFuncQ::from).unwrap_or_else(RatFuncQ::zero));
                }
                row
            })
            .collect();
        Dense { rows }
    }

    /// Reduce the first `ncols` columns; returns the pivot row of each column, if any.
    fn eliminate(&mut self, ncols: usize) -> Vec<Option<usize>> {
        let mut pivots = vec![None; ncols];
        let mut rank = 0;
        for (col, slot) in pivots.iter_mut().enumerate() {
            let Some(p) = (rank..self.rows.len()).find(|&r| !self.rows[r][col].is_zero()) else {
                continue;
            };
            self.rows.swap(rank, p);
            let inv = self.rows[rank][col].inv().expect("pivot is nonzero");
            for x in self.rows[rank].iter_mut().skip(col) {
                *x = &*x * &inv;
            }
            let pivot_row = self.rows[rank].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            *slot = Some(rank);
            rank += 1;
        }
        pivots
    }
}

/// Rank of the given columns.
pub(crate) fn rank<K: Ord>(columns: &[&BTreeMap<K, LaurentQ>]) -> usize {
    let mut d = Dense::build(columns, None);
    d.eliminate(columns.len()).iter().flatten().count()
}

/// The unique `x` with `Σ x_k columns[k] = target`.
pub(crate) fn solve<K: Ord>(
    columns: &[&BTreeMap<K, LaurentQ>],
    target: &BTreeMap<K, LaurentQ>,
) -> Result<Vec<RatFuncQ>, SolveFailure> {
    let k = columns.len();
    let mut d = Dense::build(columns, Some(target));
    let pivots = d.eliminate(k);
    if pivots.iter().any(Option::is_none) {
        return Err(SolveFailure::Singular);
    }
    if d.rows.iter().skip(k).any(|row| !row[k].is_zero()) {
        return Err(SolveFailure::Inconsistent);
    }
    Ok(pivots.into_iter().map(|p| d.rows[p.expect("checked")][k].clone()).collect())
}
