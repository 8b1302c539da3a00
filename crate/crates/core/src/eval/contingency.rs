use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::labels::{ClusterLabels, NOISE};

/// How NOISE labels enter the metrics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NoiseHandling {
    /// NOISE is one more cluster.
    #[default]
    AsCluster,
    /// Points that are NOISE in either labeling are dropped.
    Exclude,
}

/// Co-occurrence counts of two labelings. Rows follow `a`, columns follow `b`,
/// both ordered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyTable {
    counts: Vec<Vec<u64>>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let cols = counts.first().map_or(0, Vec::len);
        if counts.iter().any(|r| r.len() != cols) {
            return Err(Error::param("counts", "rows of unequal length"));
        }
        let row_sums: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let col_sums: Vec<u64> = (0..cols).map(|j| counts.iter().map(|r| r[j]).sum()).collect();
        let total = row_sums.iter().sum();
        Ok(Self {
            counts,
            row_sums,
            col_sums,
            total,
        })
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &c)| (i, j, c)))
    }
}

pub fn contingency(a: &ClusterLabels, b: &ClusterLabels) -> Result<ContingencyTable> {
    contingency_with(a, b, NoiseHandling::AsCluster)
}

pub fn contingency_with(a: &ClusterLabels, b: &ClusterLabels, noise: NoiseHandling) -> Result<ContingencyTable> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut rows: HashMap<i64, usize> = HashMap::new();
    let mut cols: HashMap<i64, usize> = HashMap::new();
    let mut pairs = Vec::with_capacity(a.len());
    for (&la, &lb) in a.as_slice().iter().zip(b.as_slice()) {
        if noise == NoiseHandling::Exclude && (la == NOISE || lb == NOISE) {
            continue;
        }
        let next = rows.len();
        let i = *rows.entry(la).or_insert(next);
        let next = cols.len();
        let j = *cols.entry(lb).or_insert(next);
        pairs.push((i, j));
    }
    let mut counts = vec![vec![0u64; cols.len()]; rows.len()];
    for (i, j) in pairs {
        counts[i][j] += 1;
    }
    ContingencyTable::from_counts(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[i64]) -> ClusterLabels {
        ClusterLabels::new(v.to_vec()).unwrap()
    }

    #[test]
    fn direct_count() {
        let t = contingency(&labels(&[0, 0, 1, 1]), &labels(&[0, 0, 1, 2])).unwrap();
        assert_eq!(t.counts(), &[vec![2, 0, 0], vec![0, 1, 1]]);
        assert_eq!(t.row_sums(), &[2, 2]);
        assert_eq!(t.col_sums(), &[2, 1, 1]);
        assert_eq!(t.total(), 4);
    }

    #[test]
    fn identical_labelings_are_diagonal() {
        let l = labels(&[3, 1, 1, 2, 3]);
        let t = contingency(&l, &l).unwrap();
        for (i, j, c) in t.cells() {
            assert_eq!(c > 0, i == j);
        }
    }

    #[test]
    fn noise_row_present_or_excluded() {
        let a = labels(&[0, NOISE, 1, NOISE]);
        let b = labels(&[0, 0, 1, 1]);
        let t = contingency(&a, &b).unwrap();
        assert_eq!(t.counts().len(), 3);
        assert_eq!(t.counts()[1], vec![1, 1]);
        let t = contingency_with(&a, &b, NoiseHandling::Exclude).unwrap();
        assert_eq!(t.counts(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(t.total(), 2);
    }

    #[test]
    fn length_mismatch() {
        assert!(contingency(&labels(&[0]), &labels(&[0, 1])).is_err());
    }
}
