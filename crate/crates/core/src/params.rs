//! Hyperparameter formulas for density level-set estimation and subsample sizes.
//!
//! All logarithms are natural.

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Density threshold used by the experiments and every CLI default.
pub const DEFAULT_MIN_PTS: usize = 10;

pub fn minpts_default() -> usize {
    DEFAULT_MIN_PTS
}

/// Target density level `lambda`, confidence `delta` and level-set regularity `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelSetParams {
    pub lambda: f64,
    pub delta: f64,
    pub beta: f64,
}

impl LevelSetParams {
    pub fn new(lambda: f64, delta: f64, beta: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::param("lambda", format!("must be > 0, got {lambda}")));
        }
        check_delta(delta)?;
        if !(beta > 0.0) {
            return Err(Error::param("beta", format!("must be > 0, got {beta}")));
        }
        Ok(Self { lambda, delta, beta })
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", format!("must lie in (0, 1), got {delta}")));
    }
    Ok(())
}

/// Volume of the unit ball in `R^dim`: `pi^(dim/2) / Gamma(dim/2 + 1)`.
pub fn unit_ball_volume(dim: usize) -> Result<f64> {
    if dim == 0 {
        return Err(Error::param("dim", "must be >= 1"));
    }
    let half = dim as f64 / 2.0;
    Ok(std::f64::consts::PI.powf(half) / gamma(half + 1.0))
}

/// `16 log(2/delta) sqrt(log n)`.
pub fn c_delta_n(delta: f64, n: usize) -> Result<f64> {
    check_delta(delta)?;
    if n < 2 {
        return Err(Error::param("n", format!("must be >= 2, got {n}")));
    }
    Ok(16.0 * (2.0 / delta).ln() * (n as f64).ln().sqrt())
}

/// Neighbourhood radius whose expected ball mass at density `lambda` matches `min_pts`,
/// inflated by the confidence correction `c`:
///
/// `(min_pts / (n v_D (lambda - lambda c^2 / sqrt(min_pts))))^(1/D)`.
///
/// Pass `c = c_delta_n(delta, n)` for the non-asymptotic setting, or `c = 0`
/// for the plug-in radius `(min_pts / (n v_D lambda))^(1/D)`.
pub fn epsilon_for_level(lambda: f64, min_pts: usize, n: usize, dim: usize, c: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::param("lambda", format!("must be > 0, got {lambda}")));
    }
    if !(c >= 0.0) {
        return Err(Error::param("c", format!("must be >= 0, got {c}")));
    }
    if min_pts == 0 {
        return Err(Error::param("min_pts", "must be >= 1"));
    }
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    let sqrt_min_pts = (min_pts as f64).sqrt();
    let c_squared = c * c;
    if sqrt_min_pts <= c_squared {
        return Err(Error::MinPtsTooSmall {
            sqrt_min_pts,
            c_squared,
        });
    }
    let v = unit_ball_volume(dim)?;
    let denominator = n as f64 * v * lambda * (1.0 - c_squared / sqrt_min_pts);
    Ok((min_pts as f64 / denominator).powf(1.0 / dim as f64))
}

/// Rounds values that are integers up to floating-point error before applying `op`.
fn snap(x: f64, op: fn(f64) -> f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest
    } else {
        op(x)
    }
}

fn clamp_count(x: f64, n: usize) -> usize {
    if x.is_nan() || x < 1.0 {
        1
    } else if x >= n as f64 {
        n.max(1)
    } else {
        x as usize
    }
}

/// Sample size `floor(p n^(D/(D+4)))`, clamped to `[1, n]`.
pub fn m_schedule(n: usize, dim: usize, p: f64) -> usize {
    let exponent = dim as f64 / (dim as f64 + 4.0);
    clamp_count(snap(p * (n as f64).powf(exponent), f64::floor), n)
}

/// Sample size `ceil(n^(D/(2 beta + D)))`, clamped to `[1, n]`.
pub fn m_minimax(n: usize, dim: usize, beta: f64) -> usize {
    let exponent = dim as f64 / (2.0 * beta + dim as f64);
    clamp_count(snap((n as f64).powf(exponent), f64::ceil), n)
}

/// How a run chooses its sample size `m` from `n` and `D`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum SampleSize {
    /// All points (`m = n`).
    Full,
    /// A fixed count, clamped to `n`.
    Fixed { m: usize },
    /// `floor(ratio n)`, clamped to `[1, n]`.
    Ratio { ratio: f64 },
    /// [`m_schedule`] with coefficient `p`.
    Schedule { p: f64 },
    /// [`m_minimax`] for regularity `beta`.
    Minimax { beta: f64 },
}

impl SampleSize {
    pub fn resolve(&self, n: usize, dim: usize) -> usize {
        match *self {
            SampleSize::Full => n,
            SampleSize::Fixed { m } => m.clamp(1, n.max(1)),
            SampleSize::Ratio { ratio } => clamp_count(snap(ratio * n as f64, f64::floor), n),
            SampleSize::Schedule { p } => m_schedule(n, dim, p),
            SampleSize::Minimax { beta } => m_minimax(n, dim, beta),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SampleSize::Fixed { m } if m == 0 => Err(Error::param("m", "must be >= 1")),
            SampleSize::Ratio { ratio } if !(ratio > 0.0 && ratio <= 1.0) => {
                Err(Error::param("m_ratio", format!("must lie in (0, 1], got {ratio}")))
            }
            SampleSize::Schedule { p } if !(p > 0.0 && p <= 1.0) => {
                Err(Error::param("m_p", format!("must lie in (0, 1], got {p}")))
            }
            SampleSize::Minimax { beta } if !(beta > 0.0) => {
                Err(Error::param("beta", format!("must be > 0, got {beta}")))
            }
            _ => Ok(()),
        }
    }
}

/// Shape of the admissible `min_pts` window
/// `(log n)^2 <= min_pts <= (log n)^(2D/(2+D)) n^(2 beta/(2 beta + D))`.
///
/// The true window carries unknown multiplicative constants; both are set to 1
/// here, so this is a diagnostic only and not a validity check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinPtsWindow {
    pub lower: f64,
    pub upper: f64,
    pub normative: bool,
}

pub fn minpts_window(n: usize, dim: usize, beta: f64) -> MinPtsWindow {
    let log_n = (n as f64).ln();
    let d = dim as f64;
    MinPtsWindow {
        lower: log_n * log_n,
        upper: log_n.powf(2.0 * d / (2.0 + d)) * (n as f64).powf(2.0 * beta / (2.0 * beta + d)),
        normative: false,
    }
}
