//! Experiment harness: runtime scaling, sample-ratio trade-off, radius
//! robustness and level-set convergence.
//!
//! Every experiment produces [`BenchRecord`]s, one per (algorithm,
//! parameter, seed) cell. Cells are independent and may run on a worker
//! pool; records are sorted afterwards so the output order never depends on
//! scheduling. Only the timing columns vary between identical runs.

mod experiments;
mod output;
pub mod stats;

pub use experiments::{
    run_epsilon_sweep, run_levelset_experiment, run_scaling_experiment, run_tradeoff_sweep, EpsilonSweep,
    LevelSetConfig, LevelSetSummary, MinPtsRule, ScalingReport, TradeoffReport,
};
pub use output::{plot_rows, write_plot_csv, write_records_csv, write_records_jsonl, PlotPoint};

use std::fmt;
use std::time::Duration;

use serde::Serialize;

use crate::cluster::{AlgoParams, AlgorithmRegistry, Budget, ClusteringResult};
use crate::data::LabeledDataset;
use crate::error::{Error, Result};
use crate::eval::{adjusted_mutual_info_with, adjusted_rand_index_with, AmiNormalization, NoiseHandling};
use crate::params::SampleSize;

/// Default per-run wall-clock cap.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);

/// An algorithm plus, for DBSCAN++, its sampling strategy and sample size.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmSpec {
    pub algorithm: String,
    pub strategy: Option<String>,
    pub sample: SampleSize,
}

impl AlgorithmSpec {
    pub fn dbscan() -> Self {
        Self {
            algorithm: "dbscan".into(),
            strategy: None,
            sample: SampleSize::Full,
        }
    }

    pub fn dbscan_pp(strategy: &str, sample: SampleSize) -> Self {
        Self {
            algorithm: "dbscanpp".into(),
            strategy: Some(strategy.into()),
            sample,
        }
    }

    /// `dbscan`, or `dbscanpp-<strategy>`.
    pub fn label(&self) -> String {
        match &self.strategy {
            Some(s) => format!("{}-{s}", self.algorithm),
            None => self.algorithm.clone(),
        }
    }

    /// Parses `dbscan`, `dbscanpp-uniform`, `dbscanpp-kcenter` (sample size supplied separately).
    pub fn parse(label: &str, sample: SampleSize) -> Result<Self> {
        match label.split_once('-') {
            None if label == "dbscan" => Ok(Self::dbscan()),
            Some(("dbscanpp", strategy)) => Ok(Self::dbscan_pp(strategy, sample)),
            _ => Err(Error::UnknownStrategy {
                kind: "algorithm",
                name: label.to_string(),
                available: "dbscan, dbscanpp-uniform, dbscanpp-kcenter".into(),
            }),
        }
    }

    fn params(&self, epsilon: f64, min_pts: usize, n: usize, dim: usize, seed: u64) -> AlgoParams {
        let mut p = AlgoParams::new(epsilon, min_pts).with_seed(seed);
        if let Some(strategy) = &self.strategy {
            p = p.with_strategy(strategy.clone()).with_m(self.sample.resolve(n, dim));
        }
        p
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Settings shared by every experiment.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub min_pts: usize,
    pub seeds: Vec<u64>,
    pub timeout: Duration,
    /// Worker threads for independent cells.
    pub workers: usize,
    /// Run timing-sensitive experiments on a single worker.
    pub serial_timing: bool,
    pub noise: NoiseHandling,
    pub normalization: AmiNormalization,
    pub registry: AlgorithmRegistry,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            min_pts: crate::params::DEFAULT_MIN_PTS,
            seeds: vec![0],
            timeout: DEFAULT_TIMEOUT,
            workers: 1,
            serial_timing: true,
            noise: NoiseHandling::AsCluster,
            normalization: AmiNormalization::Max,
            registry: AlgorithmRegistry::default(),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::param("seeds", "at least one seed is required"));
        }
        if self.min_pts == 0 {
            return Err(Error::param("min_pts", "must be >= 1"));
        }
        if self.workers == 0 {
            return Err(Error::param("workers", "must be >= 1"));
        }
        Ok(())
    }

    fn pool(&self, timing: bool) -> Result<rayon::ThreadPool> {
        let threads = if timing && self.serial_timing { 1 } else { self.workers };
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::param("workers", e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Timeout,
}

/// One row of an experiment table. Column order is fixed by field order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub experiment: String,
    pub algorithm: String,
    pub n: usize,
    pub dim: usize,
    pub epsilon: f64,
    pub min_pts: usize,
    pub m: usize,
    pub ratio: f64,
    pub seed: u64,
    pub status: RunStatus,
    pub n_clusters: Option<usize>,
    pub n_noise: Option<usize>,
    pub n_cores: Option<usize>,
    pub ari: Option<f64>,
    pub ami: Option<f64>,
    pub hausdorff: Option<f64>,
    pub sampling_ms: Option<f64>,
    pub core_detection_ms: Option<f64>,
    pub graph_build_ms: Option<f64>,
    pub components_ms: Option<f64>,
    pub assignment_ms: Option<f64>,
    pub total_ms: Option<f64>,
}

impl BenchRecord {
    /// Same record with every timing column cleared.
    pub fn without_timings(mut self) -> Self {
        self.sampling_ms = None;
        self.core_detection_ms = None;
        self.graph_build_ms = None;
        self.components_ms = None;
        self.assignment_ms = None;
        self.total_ms = None;
        self
    }

    fn sort_key(&self) -> (&str, &str, usize, u64, u64, u64) {
        (
            &self.experiment,
            &self.algorithm,
            self.n,
            self.ratio.to_bits(),
            self.epsilon.to_bits(),
            self.seed,
        )
    }
}

/// Stable output order: (experiment, algorithm, n, ratio, epsilon, seed).
pub fn sort_records(records: &mut [BenchRecord]) {
    // Parameters are non-negative, so bit patterns order like the values.
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// One unit of work: an algorithm on a dataset with fixed parameters.
pub(crate) struct Cell<'a> {
    pub experiment: &'a str,
    pub spec: &'a AlgorithmSpec,
    pub data: &'a LabeledDataset,
    pub epsilon: f64,
    pub min_pts: usize,
    pub seed: u64,
}

pub(crate) struct CellOutcome {
    pub record: BenchRecord,
    pub result: Option<ClusteringResult>,
}

pub(crate) fn run_cell(cell: &Cell<'_>, config: &BenchConfig) -> Result<CellOutcome> {
    let data = &cell.data.data;
    let (n, dim) = (data.len(), data.dim());
    let params = cell.spec.params(cell.epsilon, cell.min_pts, n, dim, cell.seed);
    let m = params.resolved_m(n);
    let algorithm = config.registry.get(&cell.spec.algorithm)?;
    let mut record = BenchRecord {
        experiment: cell.experiment.to_string(),
        algorithm: cell.spec.label(),
        n,
        dim,
        epsilon: cell.epsilon,
        min_pts: cell.min_pts,
        m,
        ratio: m as f64 / n as f64,
        seed: cell.seed,
        status: RunStatus::Ok,
        n_clusters: None,
        n_noise: None,
        n_cores: None,
        ari: None,
        ami: None,
        hausdorff: None,
        sampling_ms: None,
        core_detection_ms: None,
        graph_build_ms: None,
        components_ms: None,
        assignment_ms: None,
        total_ms: None,
    };
    let result = match algorithm.cluster(data, &params, &Budget::limited(config.timeout)) {
        Ok(result) => result,
        Err(Error::Timeout { .. }) => {
            record.status = RunStatus::Timeout;
            return Ok(CellOutcome { record, result: None });
        }
        Err(e) => return Err(e),
    };
    record.n_clusters = Some(result.num_clusters());
    record.n_noise = Some(result.noise_count());
    record.n_cores = Some(result.cores.len());
    if let Some(truth) = &cell.data.truth {
        record.ari = Some(adjusted_rand_index_with(&result.labels, truth, config.noise)?);
        record.ami = Some(adjusted_mutual_info_with(&result.labels, truth, config.noise, config.normalization)?);
    }
    let t = result.timings;
    record.sampling_ms = Some(t.sampling);
    record.core_detection_ms = Some(t.core_detection);
    record.graph_build_ms = Some(t.graph_build);
    record.components_ms = Some(t.components);
    record.assignment_ms = Some(t.assignment);
    record.total_ms = Some(t.total());
    Ok(CellOutcome {
        record,
        result: Some(result),
    })
}
