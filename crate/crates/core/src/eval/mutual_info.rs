//! Mutual information, entropies and the chance-adjusted score.
//!
//! The expected mutual information under the permutation (hypergeometric)
//! model is computed exactly by summing over every feasible cell count, with
//! log-factorials for the hypergeometric weights and a compensated sum.

use crate::error::Result;
use crate::labels::ClusterLabels;

use super::contingency::{contingency_with, ContingencyTable, NoiseHandling};

/// Normaliser in the denominator of the adjusted score.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AmiNormalization {
    /// `max(H(U), H(V))`.
    #[default]
    Max,
    /// `(H(U) + H(V)) / 2`.
    Arithmetic,
}

/// Neumaier compensated summation.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Shannon entropy (natural log) of a count vector.
pub fn entropy(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    let mut acc = CompensatedSum::default();
    for &c in counts.iter().filter(|&&c| c > 0) {
        let p = c as f64 / n;
        acc.add(-p * p.ln());
    }
    acc.value().max(0.0)
}

pub fn mutual_information(table: &ContingencyTable) -> f64 {
    let n = table.total() as f64;
    if n == 0.0 {
        return 0.0;
    }
    let mut acc = CompensatedSum::default();
    for (i, j, c) in table.cells() {
        if c == 0 {
            continue;
        }
        let c = c as f64;
        let a = table.row_sums()[i] as f64;
        let b = table.col_sums()[j] as f64;
        acc.add(c / n * (n * c / (a * b)).ln());
    }
    acc.value().max(0.0)
}

fn log_factorials(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

/// Exact expectation of the mutual information over all labelings with the
/// table's marginals.
pub fn expected_mutual_information(table: &ContingencyTable) -> f64 {
    let n = table.total() as usize;
    if n == 0 {
        return 0.0;
    }
    let lf = log_factorials(n);
    let nf = n as f64;
    let mut acc = CompensatedSum::default();
    for &a in table.row_sums() {
        let a = a as usize;
        for &b in table.col_sums() {
            let b = b as usize;
            let start = (a + b).saturating_sub(n).max(1);
            let end = a.min(b);
            // Terms shared by every n_ij of this cell.
            let fixed = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
            for nij in start..=end {
                let log_weight = fixed - lf[nij] - lf[a - nij] - lf[b - nij] - lf[n + nij - a - b];
                let value = nij as f64 / nf * (nf * nij as f64 / (a as f64 * b as f64)).ln();
                acc.add(value * log_weight.exp());
            }
        }
    }
    acc.value()
}

/// Adjusted mutual information with max-entropy normalisation, NOISE as a cluster.
pub fn adjusted_mutual_info(a: &ClusterLabels, b: &ClusterLabels) -> Result<f64> {
    adjusted_mutual_info_with(a, b, NoiseHandling::AsCluster, AmiNormalization::Max)
}

pub fn adjusted_mutual_info_with(
    a: &ClusterLabels,
    b: &ClusterLabels,
    noise: NoiseHandling,
    normalization: AmiNormalization,
) -> Result<f64> {
    let table = contingency_with(a, b, noise)?;
    Ok(ami_from_table(&table, normalization))
}

pub(crate) fn ami_from_table(table: &ContingencyTable, normalization: AmiNormalization) -> f64 {
    let h_u = entropy(table.row_sums());
    let h_v = entropy(table.col_sums());
    if h_u.max(h_v) == 0.0 {
        // Both sides are a single cluster (or empty), hence identical partitions.
        return 1.0;
    }
    let mi = mutual_information(table);
    let emi = expected_mutual_information(table);
    let norm = match normalization {
        AmiNormalization::Max => h_u.max(h_v),
        AmiNormalization::Arithmetic => 0.5 * (h_u + h_v),
    };
    let tol = 1e-12 * norm.max(1.0);
    if (norm - emi).abs() <= tol && (mi - emi).abs() <= tol {
        // Chance agreement is already maximal (e.g. all singletons on both
        // sides); the partitions match, so the limit is taken as 1.
        return 1.0;
    }
    let mut denominator = norm - emi;
    if denominator.abs() < f64::EPSILON {
        denominator = f64::EPSILON.copysign(denominator);
    }
    (mi - emi) / denominator
}
