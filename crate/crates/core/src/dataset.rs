use serde::Serialize;

use crate::error::{Error, Result};

/// `n` points in `R^D`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    coords: Vec<f64>,
    dim: usize,
}

impl Dataset {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidDataset("dataset has no points".into()))?;
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidDataset(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
            coords.extend_from_slice(row);
        }
        Self::from_flat(coords, dim)
    }

    pub fn from_flat(coords: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDataset("dimension must be at least 1".into()));
        }
        if coords.is_empty() {
            return Err(Error::InvalidDataset("dataset has no points".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::InvalidDataset(format!(
                "{} coordinates do not divide into rows of {dim}",
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite coordinate at point {}, column {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { coords, dim })
    }

    /// Convenience constructor for one-dimensional data.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::from_flat(values.to_vec(), 1)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self::from_flat(coords, self.dim)
    }

    /// Per-column zero mean, unit variance. Constant columns are centred only.
    pub fn standardized(&self) -> Self {
        let n = self.len() as f64;
        let mut coords = self.coords.clone();
        for col in 0..self.dim {
            let mean = self.points().map(|p| p[col]).sum::<f64>() / n;
            let var = self.points().map(|p| (p[col] - mean).powi(2)).sum::<f64>() / n;
            let sd = var.sqrt();
            let scale = if sd > 0.0 { 1.0 / sd } else { 1.0 };
            for row in coords.chunks_exact_mut(self.dim) {
                row[col] = (row[col] - mean) * scale;
            }
        }
        Self {
            coords,
            dim: self.dim,
        }
    }

    /// Largest pairwise distance, by exhaustive scan. Quadratic; meant for tests and small inputs.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                best = best.max(squared_distance(self.point(i), self.point(j)));
            }
        }
        best.sqrt()
    }

    pub fn metadata(&self, has_truth: bool, source: impl Into<String>) -> DatasetMetadata {
        DatasetMetadata {
            n: self.len(),
            d: self.dim,
            has_truth,
            source: source.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatasetMetadata {
    pub n: usize,
    pub d: usize,
    pub has_truth: bool,
    pub source: String,
}

#[inline]
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_shapes() {
        assert!(Dataset::from_rows(&[]).is_err());
        assert!(Dataset::from_rows(&[vec![]]).is_err());
        assert!(Dataset::from_rows(&[vec![1.0, 2.0], vec![1.0]]).is_err());
        assert!(Dataset::from_flat(vec![1.0, f64::NAN], 1).is_err());
        assert!(Dataset::from_flat(vec![1.0, f64::INFINITY], 2).is_err());
    }

    #[test]
    fn row_access() {
        let d = Dataset::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.point(1), &[3.0, 4.0]);
        assert_eq!(d.subset(&[2, 0]).unwrap().point(0), &[5.0, 6.0]);
    }

    #[test]
    fn standardize_moments() {
        let d = Dataset::from_rows(&[vec![1.0, 5.0], vec![3.0, 5.0], vec![5.0, 5.0]]).unwrap();
        let s = d.standardized();
        let col0: Vec<f64> = s.points().map(|p| p[0]).collect();
        assert!((col0.iter().sum::<f64>()).abs() < 1e-12);
        let var = col0.iter().map(|x| x * x).sum::<f64>() / 3.0;
        assert!((var - 1.0).abs() < 1e-12);
        assert!(s.points().all(|p| p[1] == 0.0));
    }

    #[test]
    fn diameter_of_line() {
        let d = Dataset::from_scalars(&[0.0, 0.5, 10.0, -1.0]).unwrap();
        assert_eq!(d.diameter(), 11.0);
    }
}
