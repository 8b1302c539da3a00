//! Cluster assignments, core sets and partition comparison.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Label value marking a point that belongs to no cluster.
pub const NOISE: i64 = -1;

/// Per-point cluster assignment. Ids are non-negative; [`NOISE`] marks outliers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClusterLabels {
    assignments: Vec<i64>,
}

impl ClusterLabels {
    pub fn new(assignments: Vec<i64>) -> Result<Self> {
        if let Some(pos) = assignments.iter().position(|&l| l < NOISE) {
            return Err(Error::param(
                "labels",
                format!("label {} at position {pos} is neither NOISE (-1) nor a cluster id", assignments[pos]),
            ));
        }
        Ok(Self { assignments })
    }

    pub fn all_noise(n: usize) -> Self {
        Self {
            assignments: vec![NOISE; n],
        }
    }

    pub(crate) fn from_raw(assignments: Vec<i64>) -> Self {
        debug_assert!(assignments.iter().all(|&l| l >= NOISE));
        Self { assignments }
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.assignments
    }

    pub fn get(&self, i: usize) -> i64 {
        self.assignments[i]
    }

    pub fn is_noise(&self, i: usize) -> bool {
        self.assignments[i] == NOISE
    }

    /// Number of distinct cluster ids.
    pub fn num_clusters(&self) -> usize {
        let mut ids: Vec<i64> = self.assignments.iter().copied().filter(|&l| l != NOISE).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    pub fn noise_count(&self) -> usize {
        self.assignments.iter().filter(|&&l| l == NOISE).count()
    }

    pub fn noise_indices(&self) -> Vec<usize> {
        self.assignments
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == NOISE)
            .map(|(i, _)| i)
            .collect()
    }

    /// Renumbers clusters `0..k` by order of first occurrence; NOISE is kept.
    pub fn canonicalize(&self) -> Self {
        let mut remap: HashMap<i64, i64> = HashMap::new();
        let assignments = self
            .assignments
            .iter()
            .map(|&l| {
                if l == NOISE {
                    NOISE
                } else {
                    let next = remap.len() as i64;
                    *remap.entry(l).or_insert(next)
                }
            })
            .collect();
        Self { assignments }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    /// True iff both labelings induce the same partition and the same noise set.
    pub fn partitions_equal(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.canonicalize() == other.canonicalize())
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|reason| Error::parse(path, reason))
    }

    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let mut assignments = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: i64 = line
                .parse()
                .map_err(|_| format!("line {}: `{line}` is not an integer label", lineno + 1))?;
            if value < NOISE {
                return Err(format!("line {}: label {value} below -1", lineno + 1));
            }
            assignments.push(value);
        }
        Ok(Self { assignments })
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::with_capacity(self.len() * 3);
        for l in &self.assignments {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_file_string()).map_err(|e| Error::io(path, e))
    }
}

/// Sorted, duplicate-free indices of the points designated core.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoreSet {
    indices: Vec<usize>,
}

impl CoreSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(Error::param("cores", format!("index {last} out of range for n = {n}")));
            }
        }
        Ok(Self { indices })
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(v: &[i64]) -> ClusterLabels {
        ClusterLabels::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(labels(&[2, 2, 0, NOISE]).canonicalize(), labels(&[0, 0, 1, NOISE]));
        assert_eq!(labels(&[0, 1]).canonicalize(), labels(&[0, 1]));
        assert_eq!(labels(&[5, 5, 5]).canonicalize(), labels(&[0, 0, 0]));
    }

    #[test]
    fn partitions_equal_examples() {
        assert!(labels(&[0, 0, 1]).partitions_equal(&labels(&[1, 1, 0])).unwrap());
        assert!(!labels(&[0, 0, 1]).partitions_equal(&labels(&[0, 1, 1])).unwrap());
        assert!(!labels(&[0, NOISE]).partitions_equal(&labels(&[0, 0])).unwrap());
        assert!(labels(&[0]).partitions_equal(&labels(&[0, 0])).is_err());
    }

    #[test]
    fn rejects_labels_below_noise() {
        assert!(ClusterLabels::new(vec![0, -2]).is_err());
    }

    #[test]
    fn counts() {
        let l = labels(&[3, NOISE, 3, 7, NOISE]);
        assert_eq!(l.num_clusters(), 2);
        assert_eq!(l.noise_count(), 2);
        assert_eq!(l.noise_indices(), vec![1, 4]);
    }

    #[test]
    fn label_file_format() {
        let l = labels(&[0, NOISE, 1]);
        assert_eq!(l.to_file_string(), "0\n-1\n1\n");
        assert_eq!(ClusterLabels::parse("0\n-1\n1\n").unwrap(), l);
        assert!(ClusterLabels::parse("0\nx\n").unwrap_err().contains("line 2"));
    }

    #[test]
    fn core_set_sorts_and_validates() {
        let c = CoreSet::new(vec![4, 1, 4, 2], 5).unwrap();
        assert_eq!(c.indices(), &[1, 2, 4]);
        assert!(CoreSet::new(vec![5], 5).is_err());
        assert!(CoreSet::new(vec![1], 5).unwrap().is_subset_of(&c));
    }

    fn arb_labels() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-1i64..6, 1..40)
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(v in arb_labels()) {
            let once = labels(&v).canonicalize();
            prop_assert_eq!(once.canonicalize(), once.clone());
            prop_assert!(once.is_canonical());
        }

        #[test]
        fn partitions_equal_iff_canonical_forms_match(a in arb_labels(), perm_seed in 0u64..1000) {
            let la = labels(&a);
            // Relabel by an arbitrary injective map on ids.
            let shifted: Vec<i64> = a.iter().map(|&l| if l == NOISE { NOISE } else { (l * 7 + perm_seed as i64) % 1009 + 3 }).collect();
            let lb = labels(&shifted);
            prop_assert!(la.partitions_equal(&lb).unwrap());
            prop_assert_eq!(la.canonicalize(), lb.canonicalize());
        }

        #[test]
        fn partitions_equal_matches_canonical_comparison(a in arb_labels(), b in arb_labels()) {
            let n = a.len().min(b.len());
            let la = labels(&a[..n]);
            let lb = labels(&b[..n]);
            prop_assert_eq!(la.partitions_equal(&lb).unwrap(), la.canonicalize() == lb.canonicalize());
        }
    }
}
