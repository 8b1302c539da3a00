use serde::Serialize;

use crate::cluster::{Assignment, ClusteringResult};
use crate::error::{Error, Result};

/// Comparison of the noise sets of a DBSCAN run and a DBSCAN++ run with the same radius and density threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseReport {
    pub n0: usize,
    pub n1: usize,
    /// Every DBSCAN noise point is also DBSCAN++ noise.
    pub subset_holds: bool,
    /// Sample fraction `m / n` of the DBSCAN++ run.
    pub ratio: f64,
}

pub fn noise_report(r_dbscan: &ClusteringResult, r_pp: &ClusteringResult) -> Result<NoiseReport> {
    let (a, b) = (&r_dbscan.params, &r_pp.params);
    if r_dbscan.labels.len() != r_pp.labels.len() {
        return Err(Error::LengthMismatch {
            left: r_dbscan.labels.len(),
            right: r_pp.labels.len(),
        });
    }
    if a.epsilon != b.epsilon || a.min_pts != b.min_pts || a.connect_radius() != b.connect_radius() {
        return Err(Error::param(
            "results",
            format!(
                "runs use different parameters (epsilon {} vs {}, min_pts {} vs {}, epsilon_connect {} vs {})",
                a.epsilon,
                b.epsilon,
                a.min_pts,
                b.min_pts,
                a.connect_radius(),
                b.connect_radius()
            ),
        ));
    }
    if a.assignment != Assignment::Graph || b.assignment != Assignment::Graph {
        return Err(Error::param("results", "noise comparison requires graph assignment for both runs"));
    }
    let n = r_dbscan.labels.len();
    if r_dbscan.sampled.len() != n {
        return Err(Error::param("r_dbscan", "reference run must evaluate every point as a candidate"));
    }
    let subset_holds = (0..n).all(|i| !r_dbscan.labels.is_noise(i) || r_pp.labels.is_noise(i));
    Ok(NoiseReport {
        n0: r_dbscan.labels.noise_count(),
        n1: r_pp.labels.noise_count(),
        subset_holds,
        ratio: r_pp.sampled.len() as f64 / n as f64,
    })
}
