//! Small statistics used to summarise sweeps.

/// Ordinary least-squares slope of `y` on `x`. `None` with fewer than two points or constant `x`.
pub fn ols_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len().min(y.len());
    if n < 2 {
        return None;
    }
    let mx = x[..n].iter().sum::<f64>() / n as f64;
    let my = y[..n].iter().sum::<f64>() / n as f64;
    let sxy: f64 = x[..n].iter().zip(&y[..n]).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x[..n].iter().map(|a| (a - mx) * (a - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Slope of `log(ms)` against `log(n)`. Requires at least four positive points.
pub fn loglog_slope(sizes: &[usize], millis: &[f64]) -> Option<f64> {
    let pairs: Vec<(f64, f64)> = sizes
        .iter()
        .zip(millis)
        .filter(|(_, &t)| t > 0.0 && t.is_finite())
        .map(|(&n, &t)| ((n as f64).ln(), t.ln()))
        .collect();
    if pairs.len() < 4 {
        return None;
    }
    let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    ols_slope(&x, &y)
}

pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len().min(y.len());
    if n < 2 {
        return None;
    }
    let mx = x[..n].iter().sum::<f64>() / n as f64;
    let my = y[..n].iter().sum::<f64>() / n as f64;
    let sxy: f64 = x[..n].iter().zip(&y[..n]).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x[..n].iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y[..n].iter().map(|b| (b - my).powi(2)).sum();
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

/// Least-squares non-increasing fit (pool adjacent violators).
pub fn isotonic_non_increasing(y: &[f64]) -> Vec<f64> {
    // Blocks of (mean, weight).
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(y.len());
    for &v in y {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (last, lw) = blocks[blocks.len() - 1];
            let (prev, pw) = blocks[blocks.len() - 2];
            if prev >= last {
                break;
            }
            blocks.pop();
            let w = lw + pw;
            *blocks.last_mut().unwrap() = ((prev * pw as f64 + last * lw as f64) / w as f64, w);
        }
    }
    blocks.into_iter().flat_map(|(m, w)| std::iter::repeat(m).take(w)).collect()
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { 0.5 * (v[mid - 1] + v[mid]) })
}

/// Longest contiguous stretch of a grid on which `score >= fraction * best`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct RobustInterval {
    pub best: f64,
    pub lo: f64,
    pub hi: f64,
    /// `hi - lo`, in units of the grid parameter.
    pub width: f64,
    pub points: usize,
}

/// `grid` must be sorted ascending. The widest qualifying run wins; ties go to the first.
pub fn robust_interval(grid: &[f64], scores: &[f64], fraction: f64) -> Option<RobustInterval> {
    let best = scores.iter().copied().filter(|s| s.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return None;
    }
    let threshold = fraction * best;
    let mut result: Option<RobustInterval> = None;
    let mut start = None;
    for i in 0..=grid.len().min(scores.len()) {
        let ok = i < scores.len() && i < grid.len() && scores[i] >= threshold;
        match (ok, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                let candidate = RobustInterval {
                    best,
                    lo: grid[s],
                    hi: grid[i - 1],
                    width: grid[i - 1] - grid[s],
                    points: i - s,
                };
                if result.map_or(true, |r| candidate.width > r.width) {
                    result = Some(candidate);
                }
                start = None;
            }
            _ => {}
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let sizes = [1000, 2000, 4000, 8000];
        let ms: Vec<f64> = sizes.iter().map(|&n| 3e-4 * (n as f64).powf(1.5)).collect();
        assert!((loglog_slope(&sizes, &ms).unwrap() - 1.5).abs() < 1e-12);
        assert!(loglog_slope(&sizes[..3], &ms[..3]).is_none());
    }

    #[test]
    fn pearson_bounds() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!(pearson(&[1.0, 1.0], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn pava() {
        assert_eq!(isotonic_non_increasing(&[5.0, 3.0, 4.0, 1.0]), vec![5.0, 3.5, 3.5, 1.0]);
        assert_eq!(isotonic_non_increasing(&[1.0, 2.0, 3.0]), vec![2.0, 2.0, 2.0]);
        let fit = isotonic_non_increasing(&[9.0, 7.0, 8.0, 8.0, 2.0, 3.0, 0.0]);
        assert!(fit.windows(2).all(|w| w[0] >= w[1]));
        assert!((fit.iter().sum::<f64>() - 37.0).abs() < 1e-12);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn robust_interval_picks_widest_run() {
        let grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7];
        let scores = [0.2, 0.95, 1.0, 0.5, 0.92, 0.93, 0.91];
        let r = robust_interval(&grid, &scores, 0.9).unwrap();
        assert_eq!((r.lo, r.hi, r.points), (0.5, 0.7, 3));
        assert!((r.width - 0.2).abs() < 1e-12);
        assert!(robust_interval(&grid, &[f64::NAN; 7], 0.9).is_none());
    }
}
