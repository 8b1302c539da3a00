use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::spatial::SpatialIndex;

/// `max_{a in from} min_{b in to} |a - b|`, exact, using a KD-tree over `to`.
pub fn directed_hausdorff(from: &Dataset, to: &Dataset) -> Result<f64> {
    if from.dim() != to.dim() {
        return Err(Error::DimensionMismatch {
            expected: from.dim(),
            actual: to.dim(),
        });
    }
    let index = SpatialIndex::build(to)?;
    let worst = (0..from.len())
        .into_par_iter()
        .map(|i| {
            index
                .nearest_unchecked(from.point(i), f64::INFINITY)
                .map_or(f64::INFINITY, |(_, d)| d)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &Dataset, b: &Dataset) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::distance;
    use crate::rng::SeededRng;

    fn brute(a: &Dataset, b: &Dataset) -> f64 {
        let directed = |x: &Dataset, y: &Dataset| {
            x.points()
                .map(|p| y.points().map(|q| distance(p, q)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
        };
        directed(a, b).max(directed(b, a))
    }

    fn random_set(n: usize, seed: u64) -> Dataset {
        let mut rng = SeededRng::new(seed);
        Dataset::from_flat((0..n * 2).map(|_| rng.uniform(0.0, 5.0)).collect(), 2).unwrap()
    }

    #[test]
    fn simple_cases() {
        let a = Dataset::from_scalars(&[0.0, 10.0]).unwrap();
        let b = Dataset::from_scalars(&[0.0]).unwrap();
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&b, &Dataset::from_scalars(&[3.0]).unwrap()).unwrap(), 3.0);
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 10.0);
        assert_eq!(directed_hausdorff(&b, &a).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Dataset::from_scalars(&[0.0]).unwrap();
        let b = Dataset::from_rows(&[vec![0.0, 1.0]]).unwrap();
        assert!(hausdorff_distance(&a, &b).is_err());
    }

    #[test]
    fn matches_brute_force_and_triangle_inequality() {
        for seed in 0..20 {
            let a = random_set(30 + seed as usize, seed);
            let b = random_set(25, seed + 100);
            let c = random_set(40, seed + 200);
            let ab = hausdorff_distance(&a, &b).unwrap();
            assert!((ab - brute(&a, &b)).abs() < 1e-12);
            let bc = hausdorff_distance(&b, &c).unwrap();
            let ac = hausdorff_distance(&a, &c).unwrap();
            assert!(ac <= ab + bc + 1e-12);
            assert_eq!(ab, hausdorff_distance(&b, &a).unwrap());
        }
    }

    #[test]
    fn zero_only_for_equal_sets() {
        let a = Dataset::from_scalars(&[1.0, 2.0, 2.0]).unwrap();
        let b = Dataset::from_scalars(&[2.0, 1.0]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 0.0);
        let c = Dataset::from_scalars(&[2.0, 1.0, 1.5]).unwrap();
        assert!(hausdorff_distance(&a, &c).unwrap() > 0.0);
    }
}
