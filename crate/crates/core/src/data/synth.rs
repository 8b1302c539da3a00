//! Seeded synthetic mixtures. Every point is labelled with its component.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::labels::ClusterLabels;
use crate::rng::SeededRng;

use super::LabeledDataset;

/// Axis-aligned box `[lower, upper]` in `R^D`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl AxisBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u) || !l.is_finite() || !u.is_finite()) {
            return Err(Error::param("boxes", "degenerate box: lower corner exceeds upper corner"));
        }
        Ok(Self { lower, upper })
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter().zip(&self.lower).zip(&self.upper).all(|((x, l), u)| l <= x && x <= u)
    }

    pub fn volume(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).product()
    }
}

pub(crate) fn check_weights(weights: &[f64], k: usize) -> Result<()> {
    if weights.len() != k || k == 0 {
        return Err(Error::param("weights", format!("expected {k} weights, got {}", weights.len())));
    }
    if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(Error::param("weights", "weights must be positive"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::param("weights", format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

pub(crate) fn check_weights_sum(weights: &[f64]) -> Result<()> {
    check_weights(weights, weights.len())
}

fn choose(rng: &mut SeededRng, weights: &[f64]) -> usize {
    let u = rng.next_f64();
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    weights.len() - 1
}

/// Isotropic Gaussian mixture. The component of each point is drawn first
/// (one uniform), then its `D` coordinates (`D` normals).
pub fn gaussian_mixture(
    n: usize,
    dim: usize,
    means: &[Vec<f64>],
    scales: &[f64],
    weights: &[f64],
    seed: u64,
) -> Result<LabeledDataset> {
    let k = means.len();
    check_weights(weights, k)?;
    if scales.len() != k {
        return Err(Error::param("scales", format!("expected {k} scales, got {}", scales.len())));
    }
    if scales.iter().any(|s| !(*s >= 0.0) || !s.is_finite()) {
        return Err(Error::param("scales", "scales must be finite and non-negative"));
    }
    if let Some(bad) = means.iter().find(|m| m.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: bad.len(),
        });
    }
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    let mut rng = SeededRng::new(seed);
    let mut coords = Vec::with_capacity(n * dim);
    let mut truth = Vec::with_capacity(n);
    for _ in 0..n {
        let c = choose(&mut rng, weights);
        truth.push(c as i64);
        for &mu in &means[c] {
            coords.push(mu + scales[c] * rng.standard_normal());
        }
    }
    Ok(LabeledDataset {
        data: Dataset::from_flat(coords, dim)?,
        truth: Some(ClusterLabels::new(truth)?),
    })
}

/// Mixture of uniform distributions on axis-aligned boxes.
pub fn uniform_mixture(n: usize, dim: usize, boxes: &[AxisBox], weights: &[f64], seed: u64) -> Result<LabeledDataset> {
    check_weights(weights, boxes.len())?;
    if let Some(bad) = boxes.iter().find(|b| b.lower.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: bad.lower.len(),
        });
    }
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    let mut rng = SeededRng::new(seed);
    let mut coords = Vec::with_capacity(n * dim);
    let mut truth = Vec::with_capacity(n);
    for _ in 0..n {
        let c = choose(&mut rng, weights);
        truth.push(c as i64);
        let b = &boxes[c];
        for (l, u) in b.lower.iter().zip(&b.upper) {
            coords.push(rng.uniform(*l, *u));
        }
    }
    Ok(LabeledDataset {
        data: Dataset::from_flat(coords, dim)?,
        truth: Some(ClusterLabels::new(truth)?),
    })
}

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 3] = ["gauss4x3d", "gauss2x2d", "uniform5x50d"];

/// Named generators used by the experiments:
///
/// * `gauss4x3d`: four unit-variance 3-D Gaussians centred at the origin and at `4 e_i`.
/// * `gauss2x2d`: two unit-variance 2-D Gaussians centred at `(0, 0)` and `(5, 0)`.
/// * `uniform5x50d`: five 50-D unit boxes, box `j` offset by `2j` along every axis.
pub fn preset(name: &str, n: usize, seed: u64) -> Result<LabeledDataset> {
    match name {
        "gauss4x3d" => gaussian_mixture(
            n,
            3,
            &[
                vec![0.0, 0.0, 0.0],
                vec![4.0, 0.0, 0.0],
                vec![0.0, 4.0, 0.0],
                vec![0.0, 0.0, 4.0],
            ],
            &[1.0; 4],
            &[0.25; 4],
            seed,
        ),
        "gauss2x2d" => gaussian_mixture(n, 2, &[vec![0.0, 0.0], vec![5.0, 0.0]], &[1.0; 2], &[0.5; 2], seed),
        "uniform5x50d" => {
            let boxes: Vec<AxisBox> = (0..5)
                .map(|j| AxisBox::new(vec![2.0 * j as f64; 50], vec![2.0 * j as f64 + 1.0; 50]))
                .collect::<Result<_>>()?;
            uniform_mixture(n, 50, &boxes, &[0.2; 5], seed)
        }
        other => Err(Error::UnknownStrategy {
            kind: "generator",
            name: other.to_string(),
            available: PRESETS.join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_scale_collapses_to_mean() {
        let d = gaussian_mixture(50, 2, &[vec![1.5, -2.0]], &[0.0], &[1.0], 3).unwrap();
        assert!(d.data.points().all(|p| p == [1.5, -2.0]));
        assert_eq!(d.truth.unwrap().num_clusters(), 1);
    }

    #[test]
    fn component_counts_follow_weights() {
        let n = 10_000;
        let means = vec![vec![0.0; 3], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let weights = [0.1, 0.2, 0.3, 0.4];
        let d = gaussian_mixture(n, 3, &means, &[0.1; 4], &weights, 17).unwrap();
        let truth = d.truth.unwrap();
        for (c, &w) in weights.iter().enumerate() {
            let count = truth.as_slice().iter().filter(|&&l| l == c as i64).count() as f64;
            let sigma = (n as f64 * w * (1.0 - w)).sqrt();
            assert!((count - n as f64 * w).abs() <= 3.0 * sigma, "component {c}: {count}");
        }
    }

    #[test]
    fn component_means_converge() {
        let means = vec![vec![-3.0, 1.0], vec![4.0, 4.0]];
        let scales = [0.5, 2.0];
        let d = gaussian_mixture(8000, 2, &means, &scales, &[0.5, 0.5], 23).unwrap();
        let truth = d.truth.unwrap();
        for c in 0..2 {
            let members: Vec<&[f64]> = d
                .data
                .points()
                .zip(truth.as_slice())
                .filter(|(_, &l)| l == c as i64)
                .map(|(p, _)| p)
                .collect();
            let k = members.len() as f64;
            for dim in 0..2 {
                let mean = members.iter().map(|p| p[dim]).sum::<f64>() / k;
                assert!((mean - means[c][dim]).abs() <= 4.0 * scales[c] / k.sqrt());
            }
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = preset("gauss4x3d", 200, 9).unwrap();
        assert_eq!(a, preset("gauss4x3d", 200, 9).unwrap());
        assert_ne!(a.data, preset("gauss4x3d", 200, 10).unwrap().data);
        let u = preset("uniform5x50d", 100, 1).unwrap();
        assert_eq!(u, preset("uniform5x50d", 100, 1).unwrap());
        assert_ne!(u.data, preset("uniform5x50d", 100, 2).unwrap().data);
    }

    #[test]
    fn invalid_weights() {
        let means = vec![vec![0.0], vec![1.0]];
        assert!(gaussian_mixture(10, 1, &means, &[1.0, 1.0], &[0.5, 0.6], 0).is_err());
        assert!(gaussian_mixture(10, 1, &means, &[1.0, 1.0], &[1.0, 0.0], 0).is_err());
        assert!(gaussian_mixture(10, 1, &means, &[1.0, 1.0], &[1.0], 0).is_err());
        assert!(gaussian_mixture(10, 2, &means, &[1.0, 1.0], &[0.5, 0.5], 0).is_err());
    }

    #[test]
    fn unit_box_samples_stay_inside() {
        let b = AxisBox::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let d = uniform_mixture(500, 2, &[b], &[1.0], 4).unwrap();
        assert!(d.data.as_flat().iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn box_membership_recovers_truth() {
        let d = preset("uniform5x50d", 2000, 5).unwrap();
        let truth = d.truth.unwrap();
        let boxes: Vec<AxisBox> = (0..5)
            .map(|j| AxisBox::new(vec![2.0 * j as f64; 50], vec![2.0 * j as f64 + 1.0; 50]).unwrap())
            .collect();
        for (i, p) in d.data.points().enumerate() {
            let owner: Vec<usize> = (0..5).filter(|&j| boxes[j].contains(p)).collect();
            assert_eq!(owner, vec![truth.get(i) as usize]);
        }
    }

    #[test]
    fn degenerate_box_rejected() {
        assert!(AxisBox::new(vec![1.0], vec![0.0]).is_err());
        assert!(AxisBox::new(vec![0.0], vec![0.0]).is_ok());
        assert!(preset("nope", 10, 0).is_err());
    }
}
