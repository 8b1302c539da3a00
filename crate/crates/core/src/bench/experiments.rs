use serde::Serialize;

use crate::data::{preset, LabeledDataset};
use crate::error::{Error, Result};
use crate::eval::{hausdorff_distance, level_set_ground_truth, DensitySpec};
use crate::params::{epsilon_for_level, SampleSize};

use super::stats::{isotonic_non_increasing, loglog_slope, median, pearson, robust_interval, RobustInterval};
use super::{run_cell, sort_records, AlgorithmSpec, BenchConfig, BenchRecord, Cell, RunStatus};

fn median_by<F>(records: &[BenchRecord], algorithm: &str, key: F, value: impl Fn(&BenchRecord) -> Option<f64>) -> Option<f64>
where
    F: Fn(&BenchRecord) -> bool,
{
    let values: Vec<f64> = records
        .iter()
        .filter(|r| r.algorithm == algorithm && r.status == RunStatus::Ok && key(r))
        .filter_map(&value)
        .collect();
    median(&values)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmSlope {
    pub algorithm: String,
    /// Log-log slope of median total runtime against `n`; `None` with fewer than four timed sizes.
    pub slope: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ScalingReport {
    pub records: Vec<BenchRecord>,
    pub slopes: Vec<AlgorithmSlope>,
}

impl ScalingReport {
    pub fn slope(&self, algorithm: &str) -> Option<f64> {
        self.slopes.iter().find(|s| s.algorithm == algorithm).and_then(|s| s.slope)
    }

    /// Median total runtime of an algorithm at one size.
    pub fn median_ms(&self, algorithm: &str, n: usize) -> Option<f64> {
        median_by(&self.records, algorithm, |r| r.n == n, |r| r.total_ms)
    }
}

/// Runtime against dataset size for each algorithm on a named generator.
///
/// Data generation is excluded from the timings. Runs that exceed the
/// configured budget are kept as `timeout` rows and left out of the fit.
pub fn run_scaling_experiment(
    generator: &str,
    sizes: &[usize],
    epsilon: f64,
    algorithms: &[AlgorithmSpec],
    config: &BenchConfig,
) -> Result<ScalingReport> {
    config.validate()?;
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("sizes", "must be a non-empty strictly increasing list"));
    }
    let pool = config.pool(true)?;
    let mut records = Vec::new();
    for &n in sizes {
        for &seed in &config.seeds {
            let data = preset(generator, n, seed)?;
            let rows: Vec<BenchRecord> = pool.install(|| {
                algorithms
                    .iter()
                    .map(|spec| {
                        let cell = Cell {
                            experiment: "scaling",
                            spec,
                            data: &data,
                            epsilon,
                            min_pts: config.min_pts,
                            seed,
                        };
                        run_cell(&cell, config).map(|o| o.record)
                    })
                    .collect::<Result<_>>()
            })?;
            records.extend(rows);
        }
    }
    sort_records(&mut records);
    let slopes = algorithms
        .iter()
        .map(|spec| {
            let label = spec.label();
            let (ns, ms): (Vec<usize>, Vec<f64>) = sizes
                .iter()
                .filter_map(|&n| median_by(&records, &label, |r| r.n == n, |r| r.total_ms).map(|t| (n, t)))
                .unzip();
            AlgorithmSlope {
                slope: loglog_slope(&ns, &ms),
                algorithm: label,
            }
        })
        .collect();
    Ok(ScalingReport { records, slopes })
}

#[derive(Clone, Debug, Serialize)]
pub struct TradeoffSummary {
    pub algorithm: String,
    /// Correlation of median runtime with the sample ratio.
    pub runtime_pearson: Option<f64>,
    /// Median noise count per ratio, in ratio order.
    pub noise: Vec<f64>,
    /// Non-increasing least-squares fit of `noise`.
    pub noise_isotonic: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct TradeoffReport {
    pub records: Vec<BenchRecord>,
    pub ratios: Vec<f64>,
    pub dbscan_noise: usize,
    pub summaries: Vec<TradeoffSummary>,
}

impl TradeoffReport {
    pub fn median_ari(&self, algorithm: &str, ratio_index: usize) -> Option<f64> {
        let r = self.ratios[ratio_index];
        median_by(&self.records, algorithm, |rec| rec.ratio_requested(r), |rec| rec.ari)
    }

    pub fn dbscan_ari(&self) -> Option<f64> {
        median_by(&self.records, "dbscan", |_| true, |r| r.ari)
    }
}

impl BenchRecord {
    fn ratio_requested(&self, ratio: f64) -> bool {
        self.m == SampleSize::Ratio { ratio }.resolve(self.n, self.dim)
    }
}

/// Scores, runtime and noise of DBSCAN++ as a function of `m / n`, plus a DBSCAN baseline row.
pub fn run_tradeoff_sweep(
    data: &LabeledDataset,
    ratios: &[f64],
    epsilon: f64,
    strategies: &[&str],
    config: &BenchConfig,
) -> Result<TradeoffReport> {
    config.validate()?;
    if ratios.is_empty() {
        return Err(Error::param("ratios", "at least one ratio is required"));
    }
    for &r in ratios {
        SampleSize::Ratio { ratio: r }.validate()?;
    }
    let mut specs = vec![AlgorithmSpec::dbscan()];
    for &strategy in strategies {
        for &ratio in ratios {
            specs.push(AlgorithmSpec::dbscan_pp(strategy, SampleSize::Ratio { ratio }));
        }
    }
    let pool = config.pool(true)?;
    let mut records = Vec::new();
    for &seed in &config.seeds {
        let rows: Vec<BenchRecord> = pool.install(|| {
            specs
                .iter()
                .map(|spec| {
                    let cell = Cell {
                        experiment: "tradeoff",
                        spec,
                        data,
                        epsilon,
                        min_pts: config.min_pts,
                        seed,
                    };
                    run_cell(&cell, config).map(|o| o.record)
                })
                .collect::<Result<_>>()
        })?;
        records.extend(rows);
    }
    sort_records(&mut records);
    let dbscan_noise = records
        .iter()
        .find(|r| r.algorithm == "dbscan")
        .and_then(|r| r.n_noise)
        .unwrap_or(0);
    let summaries = strategies
        .iter()
        .map(|strategy| {
            let label = AlgorithmSpec::dbscan_pp(strategy, SampleSize::Full).label();
            let runtime: Vec<Option<f64>> = ratios
                .iter()
                .map(|&ratio| median_by(&records, &label, |r| r.ratio_requested(ratio), |r| r.total_ms))
                .collect();
            let noise: Vec<f64> = ratios
                .iter()
                .map(|&ratio| {
                    median_by(&records, &label, |r| r.ratio_requested(ratio), |r| r.n_noise.map(|x| x as f64))
                        .unwrap_or(f64::NAN)
                })
                .collect();
            let (xs, ys): (Vec<f64>, Vec<f64>) = ratios
                .iter()
                .zip(&runtime)
                .filter_map(|(&x, y)| y.map(|y| (x, y)))
                .unzip();
            TradeoffSummary {
                algorithm: label,
                runtime_pearson: pearson(&xs, &ys),
                noise_isotonic: isotonic_non_increasing(&noise),
                noise,
            }
        })
        .collect();
    Ok(TradeoffReport {
        records,
        ratios: ratios.to_vec(),
        dbscan_noise,
        summaries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RobustnessSummary {
    pub algorithm: String,
    /// Widest stretch of the grid reaching 90% of the algorithm's best mean ARI.
    pub interval: Option<RobustInterval>,
}

#[derive(Clone, Debug)]
pub struct EpsilonSweep {
    pub records: Vec<BenchRecord>,
    pub grid: Vec<f64>,
    pub robustness: Vec<RobustnessSummary>,
}

impl EpsilonSweep {
    pub fn robustness(&self, algorithm: &str) -> Option<RobustInterval> {
        self.robustness
            .iter()
            .find(|r| r.algorithm == algorithm)
            .and_then(|r| r.interval)
    }

    /// Mean ARI over seeds at each grid point.
    pub fn mean_ari(&self, algorithm: &str) -> Vec<f64> {
        mean_scores(&self.records, algorithm, &self.grid)
    }
}

fn mean_scores(records: &[BenchRecord], algorithm: &str, grid: &[f64]) -> Vec<f64> {
    grid.iter()
        .map(|&eps| {
            let v: Vec<f64> = records
                .iter()
                .filter(|r| r.algorithm == algorithm && r.epsilon == eps)
                .filter_map(|r| r.ari)
                .collect();
            if v.is_empty() {
                f64::NAN
            } else {
                v.iter().sum::<f64>() / v.len() as f64
            }
        })
        .collect()
}

/// Fraction of an algorithm's best score that counts as "near best" in the robustness summary.
pub const ROBUST_FRACTION: f64 = 0.9;

/// ARI/AMI of each algorithm over a grid of radii.
pub fn run_epsilon_sweep(
    data: &LabeledDataset,
    grid: &[f64],
    algorithms: &[AlgorithmSpec],
    config: &BenchConfig,
) -> Result<EpsilonSweep> {
    config.validate()?;
    if grid.is_empty() || grid.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::param("eps", "grid must be non-empty and positive"));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut cells = Vec::new();
    for spec in algorithms {
        for &epsilon in &sorted {
            for &seed in &config.seeds {
                cells.push((spec, epsilon, seed));
            }
        }
    }
    let pool = config.pool(false)?;
    let mut records: Vec<BenchRecord> = pool.install(|| {
        use rayon::prelude::*;
        cells
            .par_iter()
            .map(|&(spec, epsilon, seed)| {
                let cell = Cell {
                    experiment: "eps-sweep",
                    spec,
                    data,
                    epsilon,
                    min_pts: config.min_pts,
                    seed,
                };
                run_cell(&cell, config).map(|o| o.record)
            })
            .collect::<Result<_>>()
    })?;
    sort_records(&mut records);
    let robustness = algorithms
        .iter()
        .map(|spec| {
            let label = spec.label();
            let scores = mean_scores(&records, &label, &sorted);
            RobustnessSummary {
                interval: robust_interval(&sorted, &scores, ROBUST_FRACTION),
                algorithm: label,
            }
        })
        .collect();
    Ok(EpsilonSweep {
        records,
        grid: sorted,
        robustness,
    })
}

/// How `min_pts` grows with `n` in the level-set study.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum MinPtsRule {
    Fixed(usize),
    /// `ceil(coefficient * n^exponent)`.
    Power { coefficient: f64, exponent: f64 },
}

impl MinPtsRule {
    pub fn resolve(&self, n: usize) -> usize {
        match *self {
            MinPtsRule::Fixed(k) => k.max(1),
            MinPtsRule::Power { coefficient, exponent } => ((coefficient * (n as f64).powf(exponent)).ceil() as usize).max(1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LevelSetConfig {
    pub min_pts: MinPtsRule,
    pub sample: SampleSize,
    pub strategy: String,
    /// Confidence correction passed to the radius formula; 0 gives the plug-in radius.
    pub c: f64,
    /// Grid step of the ground-truth level set.
    pub resolution: f64,
}

impl LevelSetConfig {
    /// Rates for regularity `beta` in dimension `dim`: `min_pts = n^(2 beta/(2 beta + D))`,
    /// `m = n^(D/(2 beta + D))`, uniform sampling, plug-in radius.
    pub fn minimax(beta: f64, dim: usize) -> Self {
        let d = dim as f64;
        Self {
            min_pts: MinPtsRule::Power {
                coefficient: 1.0,
                exponent: 2.0 * beta / (2.0 * beta + d),
            },
            sample: SampleSize::Minimax { beta },
            strategy: "uniform".into(),
            c: 0.0,
            resolution: 0.05,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelSetSummary {
    pub n: usize,
    pub m: usize,
    pub min_pts: usize,
    pub epsilon: f64,
    /// Median over seeds; infinite when a run found no cores.
    pub median_hausdorff: f64,
}

/// Hausdorff distance between DBSCAN++ core points and the true level set
/// `{f >= lambda}` as `n` grows, with the radius from [`epsilon_for_level`].
pub fn run_levelset_experiment(
    spec: &DensitySpec,
    lambda: f64,
    sizes: &[usize],
    levelset: &LevelSetConfig,
    config: &BenchConfig,
) -> Result<(Vec<BenchRecord>, Vec<LevelSetSummary>)> {
    config.validate()?;
    if spec.dim() > 3 {
        return Err(Error::param("dim", "level-set experiment supports D <= 3"));
    }
    levelset.sample.validate()?;
    let truth = level_set_ground_truth(spec, lambda, levelset.resolution)?;
    let algorithm = AlgorithmSpec::dbscan_pp(&levelset.strategy, levelset.sample);
    let pool = config.pool(false)?;
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for &n in sizes {
        let min_pts = levelset.min_pts.resolve(n);
        let epsilon = epsilon_for_level(lambda, min_pts, n, spec.dim(), levelset.c)?;
        let rows: Vec<BenchRecord> = pool.install(|| {
            use rayon::prelude::*;
            config
                .seeds
                .par_iter()
                .map(|&seed| {
                    let data = spec.sample(n, seed)?;
                    let cell = Cell {
                        experiment: "levelset",
                        spec: &algorithm,
                        data: &data,
                        epsilon,
                        min_pts,
                        seed,
                    };
                    let outcome = run_cell(&cell, config)?;
                    let mut record = outcome.record;
                    if let Some(result) = outcome.result {
                        record.hausdorff = Some(if result.cores.is_empty() {
                            f64::INFINITY
                        } else {
                            hausdorff_distance(&data.data.subset(result.cores.indices())?, &truth)?
                        });
                    }
                    Ok(record)
                })
                .collect::<Result<_>>()
        })?;
        let distances: Vec<f64> = rows.iter().filter_map(|r| r.hausdorff).collect();
        summaries.push(LevelSetSummary {
            n,
            m: levelset.sample.resolve(n, spec.dim()),
            min_pts,
            epsilon,
            median_hausdorff: median(&distances).unwrap_or(f64::INFINITY),
        });
        records.extend(rows);
    }
    sort_records(&mut records);
    Ok((records, summaries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> BenchConfig {
        BenchConfig {
            seeds: vec![0, 1],
            ..BenchConfig::default()
        }
    }

    #[test]
    fn scaling_rows_per_size_and_algorithm() {
        let algorithms = [
            AlgorithmSpec::dbscan(),
            AlgorithmSpec::dbscan_pp("uniform", SampleSize::Fixed { m: 100 }),
            AlgorithmSpec::dbscan_pp("kcenter", SampleSize::Fixed { m: 100 }),
        ];
        let config = BenchConfig::default();
        let report = run_scaling_experiment("gauss4x3d", &[1000, 2000], 0.5, &algorithms, &config).unwrap();
        assert_eq!(report.records.len(), 6);
        for a in &algorithms {
            assert_eq!(report.records.iter().filter(|r| r.algorithm == a.label()).count(), 2);
            assert!(report.slope(&a.label()).is_none());
        }
        assert!(run_scaling_experiment("gauss4x3d", &[2000, 1000], 0.5, &algorithms, &config).is_err());
    }

    #[test]
    fn full_ratio_uniform_matches_dbscan_scores() {
        let data = preset("gauss2x2d", 600, 3).unwrap();
        let report = run_tradeoff_sweep(&data, &[0.1, 0.5, 1.0], 0.5, &["uniform", "kcenter"], &small_config()).unwrap();
        let dbscan = report.dbscan_ari().unwrap();
        assert_eq!(report.median_ari("dbscanpp-uniform", 2).unwrap(), dbscan);
        assert_eq!(report.median_ari("dbscanpp-kcenter", 2).unwrap(), dbscan);
        for s in &report.summaries {
            assert_eq!(*s.noise.last().unwrap(), report.dbscan_noise as f64);
            assert!(s.noise.iter().all(|&x| x >= report.dbscan_noise as f64));
        }
        // One baseline row per seed plus one row per (strategy, ratio, seed).
        assert_eq!(report.records.len(), 2 + 2 * 3 * 2);
    }

    #[test]
    fn epsilon_sweep_extremes() {
        let data = preset("gauss2x2d", 300, 1).unwrap();
        let diameter = data.data.diameter();
        let grid = [1e-9, diameter];
        let algorithms = [AlgorithmSpec::dbscan(), AlgorithmSpec::dbscan_pp("kcenter", SampleSize::Ratio { ratio: 0.1 })];
        let sweep = run_epsilon_sweep(&data, &grid, &algorithms, &BenchConfig::default()).unwrap();
        for r in &sweep.records {
            if r.epsilon == 1e-9 {
                assert_eq!(r.n_noise, Some(300));
                assert_eq!(r.n_clusters, Some(0));
            } else {
                assert_eq!(r.n_clusters, Some(1));
                assert_eq!(r.n_noise, Some(0));
            }
        }
        assert!(run_epsilon_sweep(&data, &[], &algorithms, &BenchConfig::default()).is_err());
        assert!(run_epsilon_sweep(&data, &[-1.0], &algorithms, &BenchConfig::default()).is_err());
    }

    #[test]
    fn sweeps_are_reproducible_modulo_timings() {
        let data = preset("gauss2x2d", 400, 2).unwrap();
        let algorithms = [AlgorithmSpec::dbscan_pp("uniform", SampleSize::Ratio { ratio: 0.2 })];
        let config = BenchConfig {
            workers: 4,
            seeds: vec![5, 6, 7],
            ..BenchConfig::default()
        };
        let strip = |s: EpsilonSweep| s.records.into_iter().map(BenchRecord::without_timings).collect::<Vec<_>>();
        let a = strip(run_epsilon_sweep(&data, &[0.2, 0.4, 0.8], &algorithms, &config).unwrap());
        let b = strip(run_epsilon_sweep(&data, &[0.8, 0.4, 0.2], &algorithms, &config).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn levelset_rejects_level_above_peak() {
        let spec = DensitySpec::gaussians(&[vec![0.0, 0.0]], 1.0).unwrap();
        let config = LevelSetConfig::minimax(1.0, 2);
        assert!(matches!(
            run_levelset_experiment(&spec, 10.0, &[1000], &config, &BenchConfig::default()),
            Err(Error::EmptyLevelSet { .. })
        ));
    }

    #[test]
    fn min_pts_rules() {
        assert_eq!(MinPtsRule::Fixed(10).resolve(1000), 10);
        assert_eq!(MinPtsRule::Power { coefficient: 1.0, exponent: 0.5 }.resolve(10_000), 100);
        assert_eq!(MinPtsRule::Power { coefficient: 2.0, exponent: 0.5 }.resolve(1000), 64);
    }
}
