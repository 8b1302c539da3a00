use crate::error::{Error, Result};
use crate::labels::ClusterLabels;

use super::contingency::{contingency_with, ContingencyTable, NoiseHandling};

fn pairs(x: u64) -> i128 {
    let x = i128::from(x);
    x * (x - 1) / 2
}

/// Adjusted Rand index with NOISE treated as an ordinary cluster.
pub fn adjusted_rand_index(a: &ClusterLabels, b: &ClusterLabels) -> Result<f64> {
    adjusted_rand_index_with(a, b, NoiseHandling::AsCluster)
}

pub fn adjusted_rand_index_with(a: &ClusterLabels, b: &ClusterLabels, noise: NoiseHandling) -> Result<f64> {
    let table = contingency_with(a, b, noise)?;
    ari_from_table(&table)
}

/// Evaluated in integer arithmetic up to one final division: with
/// `S = sum C(n_ij, 2)`, `A = sum C(a_i, 2)`, `B = sum C(b_j, 2)`, `N = C(n, 2)`,
/// `ARI = (2 N S - 2 A B) / (N (A + B) - 2 A B)`.
pub(crate) fn ari_from_table(table: &ContingencyTable) -> Result<f64> {
    if table.total() < 2 {
        return Err(Error::param("labels", "adjusted Rand index needs at least two points"));
    }
    let s: i128 = table.cells().map(|(_, _, c)| pairs(c)).sum();
    let a: i128 = table.row_sums().iter().map(|&x| pairs(x)).sum();
    let b: i128 = table.col_sums().iter().map(|&x| pairs(x)).sum();
    let n = pairs(table.total());
    let numerator = 2 * n * s - 2 * a * b;
    let denominator = n * (a + b) - 2 * a * b;
    if denominator == 0 {
        return Ok(if numerator == 0 { 1.0 } else { 0.0 });
    }
    Ok(numerator as f64 / denominator as f64)
}
