//! Synthetic densities with known level sets `{x : f(x) >= lambda}`.

use crate::data::{gaussian_mixture, uniform_mixture, AxisBox, LabeledDataset};
use crate::dataset::{squared_distance, Dataset};
use crate::error::{Error, Result};

const MAX_GRID_POINTS: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GaussianComponent {
    pub weight: f64,
    pub mean: Vec<f64>,
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxComponent {
    pub weight: f64,
    pub bounds: AxisBox,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DensityFamily {
    GaussianMixture(Vec<GaussianComponent>),
    UniformMixture(Vec<BoxComponent>),
}

/// A mixture density in `R^dim` that can be both evaluated and sampled.
#[derive(Clone, Debug, PartialEq)]
pub struct DensitySpec {
    family: DensityFamily,
    dim: usize,
}

impl DensitySpec {
    pub fn new(family: DensityFamily, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be >= 1"));
        }
        let weights: Vec<f64> = match &family {
            DensityFamily::GaussianMixture(cs) => {
                for c in cs {
                    if c.mean.len() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            actual: c.mean.len(),
                        });
                    }
                    if !(c.scale > 0.0) || !c.scale.is_finite() {
                        return Err(Error::param("scale", format!("must be positive, got {}", c.scale)));
                    }
                }
                cs.iter().map(|c| c.weight).collect()
            }
            DensityFamily::UniformMixture(cs) => {
                for c in cs {
                    if c.bounds.lower.len() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            actual: c.bounds.lower.len(),
                        });
                    }
                    if !(c.bounds.volume() > 0.0) {
                        return Err(Error::param("boxes", "box has zero volume"));
                    }
                }
                cs.iter().map(|c| c.weight).collect()
            }
        };
        crate::data::synth_check_weights(&weights)?;
        Ok(Self { family, dim })
    }

    /// Equal-weight isotropic Gaussians sharing one scale.
    pub fn gaussians(means: &[Vec<f64>], scale: f64) -> Result<Self> {
        let dim = means.first().map_or(0, Vec::len);
        let w = 1.0 / means.len().max(1) as f64;
        let components = means
            .iter()
            .map(|m| GaussianComponent {
                weight: w,
                mean: m.clone(),
                scale,
            })
            .collect();
        Self::new(DensityFamily::GaussianMixture(components), dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> &DensityFamily {
        &self.family
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        match &self.family {
            DensityFamily::GaussianMixture(cs) => cs
                .iter()
                .map(|c| {
                    let var = c.scale * c.scale;
                    let norm = (2.0 * std::f64::consts::PI * var).powf(-(self.dim as f64) / 2.0);
                    c.weight * norm * (-squared_distance(x, &c.mean) / (2.0 * var)).exp()
                })
                .sum(),
            DensityFamily::UniformMixture(cs) => cs
                .iter()
                .filter(|c| c.bounds.contains(x))
                .map(|c| c.weight / c.bounds.volume())
                .sum(),
        }
    }

    /// Box covering the support: six scale units around each Gaussian mean, or the union of the boxes.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        match &self.family {
            DensityFamily::GaussianMixture(cs) => {
                for c in cs {
                    for d in 0..self.dim {
                        lo[d] = lo[d].min(c.mean[d] - 6.0 * c.scale);
                        hi[d] = hi[d].max(c.mean[d] + 6.0 * c.scale);
                    }
                }
            }
            DensityFamily::UniformMixture(cs) => {
                for c in cs {
                    for d in 0..self.dim {
                        lo[d] = lo[d].min(c.bounds.lower[d]);
                        hi[d] = hi[d].max(c.bounds.upper[d]);
                    }
                }
            }
        }
        (lo, hi)
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<LabeledDataset> {
        match &self.family {
            DensityFamily::GaussianMixture(cs) => {
                let means: Vec<Vec<f64>> = cs.iter().map(|c| c.mean.clone()).collect();
                let scales: Vec<f64> = cs.iter().map(|c| c.scale).collect();
                let weights: Vec<f64> = cs.iter().map(|c| c.weight).collect();
                gaussian_mixture(n, self.dim, &means, &scales, &weights, seed)
            }
            DensityFamily::UniformMixture(cs) => {
                let boxes: Vec<AxisBox> = cs.iter().map(|c| c.bounds.clone()).collect();
                let weights: Vec<f64> = cs.iter().map(|c| c.weight).collect();
                uniform_mixture(n, self.dim, &boxes, &weights, seed)
            }
        }
    }
}

/// Grid points of the bounding box with `f(x) >= lambda`, spaced `resolution` apart.
pub fn level_set_ground_truth(spec: &DensitySpec, lambda: f64, resolution: f64) -> Result<Dataset> {
    if spec.dim() > 3 {
        return Err(Error::param("dim", format!("grid enumeration supports D <= 3, got {}", spec.dim())));
    }
    if !(lambda > 0.0) {
        return Err(Error::param("lambda", format!("must be > 0, got {lambda}")));
    }
    if !(resolution > 0.0) || !resolution.is_finite() {
        return Err(Error::param("resolution", format!("must be > 0, got {resolution}")));
    }
    let (lo, hi) = spec.bounding_box();
    let steps: Vec<usize> = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| ((h - l) / resolution + 1e-9).floor() as usize + 1)
        .collect();
    let total = steps.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    if total.map_or(true, |t| t > MAX_GRID_POINTS) {
        return Err(Error::param("resolution", "grid too fine for the bounding box"));
    }
    let total = total.unwrap_or(0);
    let dim = spec.dim();
    let mut coords = Vec::new();
    let mut x = vec![0.0; dim];
    for flat in 0..total {
        let mut rest = flat;
        for d in (0..dim).rev() {
            x[d] = lo[d] + (rest % steps[d]) as f64 * resolution;
            rest /= steps[d];
        }
        if spec.density(&x) >= lambda {
            coords.extend_from_slice(&x);
        }
    }
    if coords.is_empty() {
        return Err(Error::EmptyLevelSet { lambda });
    }
    Dataset::from_flat(coords, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_normal_1d() -> DensitySpec {
        DensitySpec::gaussians(&[vec![0.0]], 1.0).unwrap()
    }

    #[test]
    fn gaussian_level_set_is_an_interval() {
        let spec = standard_normal_1d();
        let lambda = spec.density(&[1.0]);
        assert!((lambda - (-0.5f64).exp() / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
        let h = 0.01;
        let set = level_set_ground_truth(&spec, lambda, h).unwrap();
        let xs: Vec<f64> = set.points().map(|p| p[0]).collect();
        let (min, max) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        assert!(min >= -1.0 - h && min <= -1.0 + h, "{min}");
        assert!(max <= 1.0 + h && max >= 1.0 - h, "{max}");
    }

    #[test]
    fn tiny_level_covers_the_box() {
        let spec = standard_normal_1d();
        let set = level_set_ground_truth(&spec, 1e-300, 0.5).unwrap();
        assert_eq!(set.len(), 25);
    }

    #[test]
    fn separated_gaussians_give_two_segments() {
        let spec = DensitySpec::gaussians(&[vec![0.0], vec![10.0]], 1.0).unwrap();
        let peak = spec.density(&[0.0]);
        let valley = spec.density(&[5.0]);
        let h = 0.05;
        let set = level_set_ground_truth(&spec, 0.5 * (peak + valley), h).unwrap();
        let xs: Vec<f64> = set.points().map(|p| p[0]).collect();
        let gaps = xs.windows(2).filter(|w| w[1] - w[0] > 1.5 * h).count();
        assert_eq!(gaps, 1);
        assert!(xs.iter().all(|&x| (x - 0.0).abs() < 2.0 || (x - 10.0).abs() < 2.0));
    }

    #[test]
    fn level_above_peak_is_an_error() {
        let spec = standard_normal_1d();
        assert!(matches!(
            level_set_ground_truth(&spec, 1.0, 0.01),
            Err(Error::EmptyLevelSet { .. })
        ));
    }

    #[test]
    fn uniform_boxes() {
        let spec = DensitySpec::new(
            DensityFamily::UniformMixture(vec![BoxComponent {
                weight: 1.0,
                bounds: AxisBox::new(vec![0.0, 0.0], vec![2.0, 1.0]).unwrap(),
            }]),
            2,
        )
        .unwrap();
        assert_eq!(spec.density(&[1.0, 0.5]), 0.5);
        assert_eq!(spec.density(&[3.0, 0.5]), 0.0);
        let set = level_set_ground_truth(&spec, 0.5, 0.5).unwrap();
        assert_eq!(set.len(), 15);
        let sample = spec.sample(100, 1).unwrap();
        assert!(sample.data.points().all(|p| spec.density(p) > 0.0));
    }

    #[test]
    fn validation() {
        assert!(DensitySpec::gaussians(&[vec![0.0]], 0.0).is_err());
        assert!(DensitySpec::gaussians(&[vec![0.0; 4]], 1.0).is_ok());
        let four_d = DensitySpec::gaussians(&[vec![0.0; 4]], 1.0).unwrap();
        assert!(level_set_ground_truth(&four_d, 0.01, 0.5).is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        let spec = DensitySpec::gaussians(&[vec![0.0, 0.0], vec![3.0, 1.0]], 0.7).unwrap();
        let (lo, hi) = spec.bounding_box();
        let h = 0.02;
        let mut total = 0.0;
        let nx = ((hi[0] - lo[0]) / h) as usize;
        let ny = ((hi[1] - lo[1]) / h) as usize;
        for i in 0..nx {
            for j in 0..ny {
                total += spec.density(&[lo[0] + (i as f64 + 0.5) * h, lo[1] + (j as f64 + 0.5) * h]) * h * h;
            }
        }
        assert!((total - 1.0).abs() < 1e-6, "{total}");
    }
}
