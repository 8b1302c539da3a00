//! Core-point detection and the DBSCAN / DBSCAN++ pipelines.
//!
//! Both algorithms share the same back half: given a core set, build a graph
//! with an edge from every core to each dataset point inside its connection
//! ball and report the connected components. DBSCAN takes every point as a
//! candidate core; DBSCAN++ only evaluates the density of `m` sampled points.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::labels::{ClusterLabels, CoreSet, NOISE};
use crate::sampling::{Sampler, SamplerRegistry};
use crate::spatial::SpatialIndex;
use crate::union_find::DisjointSet;

const CHUNK: usize = 512;

/// How non-core points receive a cluster.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assignment {
    /// Connected components of the core-to-neighbour graph.
    #[default]
    Graph,
    /// Components over cores only; every other point joins its nearest core within `epsilon`.
    NearestCore,
}

impl Assignment {
    pub fn as_str(self) -> &'static str {
        match self {
            Assignment::Graph => "graph",
            Assignment::NearestCore => "nearest-core",
        }
    }
}

impl std::str::FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(Assignment::Graph),
            "nearest-core" | "nearest" => Ok(Assignment::NearestCore),
            other => Err(Error::param(
                "assignment",
                format!("expected `graph` or `nearest-core`, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full configuration of one clustering run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgoParams {
    pub epsilon: f64,
    pub min_pts: usize,
    /// Number of sampled candidates; `None` means all `n` points.
    pub m: Option<usize>,
    /// Name of a registered sampling strategy.
    pub strategy: String,
    pub seed: u64,
    /// Radius used to connect cores to their neighbours; `None` means `epsilon`.
    pub epsilon_connect: Option<f64>,
    pub assignment: Assignment,
}

impl AlgoParams {
    pub fn new(epsilon: f64, min_pts: usize) -> Self {
        Self {
            epsilon,
            min_pts,
            m: None,
            strategy: "uniform".to_string(),
            seed: 0,
            epsilon_connect: None,
            assignment: Assignment::Graph,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_strategy(mut self, strategy: impl Into<String>) -> Self {
        self.strategy = strategy.into();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_epsilon_connect(mut self, epsilon_connect: f64) -> Self {
        self.epsilon_connect = Some(epsilon_connect);
        self
    }

    pub fn with_assignment(mut self, assignment: Assignment) -> Self {
        self.assignment = assignment;
        self
    }

    pub fn connect_radius(&self) -> f64 {
        self.epsilon_connect.unwrap_or(self.epsilon)
    }

    pub fn resolved_m(&self, n: usize) -> usize {
        self.m.unwrap_or(n)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::param("epsilon", format!("must be a finite value > 0, got {}", self.epsilon)));
        }
        if self.min_pts == 0 {
            return Err(Error::param("min_pts", "must be >= 1"));
        }
        if let Some(m) = self.m {
            if m == 0 || m > n {
                return Err(Error::param("m", format!("must satisfy 1 <= m <= n = {n}, got {m}")));
            }
        }
        let connect = self.connect_radius();
        if !(connect >= self.epsilon) || !connect.is_finite() {
            return Err(Error::param(
                "epsilon_connect",
                format!("must be finite and >= epsilon = {}, got {connect}", self.epsilon),
            ));
        }
        Ok(())
    }
}

/// Wall-clock milliseconds spent in each phase of a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub sampling: f64,
    pub core_detection: f64,
    pub graph_build: f64,
    pub components: f64,
    pub assignment: f64,
}

impl PhaseTimings {
    pub fn total(&self) -> f64 {
        self.sampling + self.core_detection + self.graph_build + self.components + self.assignment
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, f64> {
        BTreeMap::from([
            ("sampling", self.sampling),
            ("core_detection", self.core_detection),
            ("graph_build", self.graph_build),
            ("components", self.components),
            ("assignment", self.assignment),
            ("total", self.total()),
        ])
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Clone, Debug)]
pub struct ClusteringResult {
    pub algorithm: String,
    pub labels: ClusterLabels,
    pub cores: CoreSet,
    /// Candidate indices whose density was evaluated (all points for DBSCAN).
    pub sampled: Vec<usize>,
    pub params: AlgoParams,
    pub timings: PhaseTimings,
}

impl ClusteringResult {
    pub fn num_clusters(&self) -> usize {
        self.labels.num_clusters()
    }

    pub fn noise_count(&self) -> usize {
        self.labels.noise_count()
    }
}

/// Optional wall-clock cap for a run, checked between chunks of work.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    limit: Option<Duration>,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn limited(limit: Duration) -> Self {
        Self {
            limit: Some(limit),
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn check(&self) -> Result<()> {
        match (self.deadline, self.limit) {
            (Some(deadline), Some(limit)) if Instant::now() > deadline => Err(Error::Timeout {
                budget_ms: limit.as_millis(),
            }),
            _ => Ok(()),
        }
    }
}

/// Candidates whose closed `epsilon`-ball holds at least `min_pts` points of
/// the indexed dataset, the candidate itself included.
pub fn find_core_points(
    data: &Dataset,
    index: &SpatialIndex<'_>,
    candidates: &[usize],
    epsilon: f64,
    min_pts: usize,
) -> Result<CoreSet> {
    find_core_points_within(data, index, candidates, epsilon, min_pts, &Budget::unlimited())
}

fn find_core_points_within(
    data: &Dataset,
    index: &SpatialIndex<'_>,
    candidates: &[usize],
    epsilon: f64,
    min_pts: usize,
    budget: &Budget,
) -> Result<CoreSet> {
    if !(epsilon > 0.0) {
        return Err(Error::param("epsilon", format!("must be > 0, got {epsilon}")));
    }
    if let Some(&bad) = candidates.iter().find(|&&c| c >= data.len()) {
        return Err(Error::param("candidates", format!("index {bad} out of range for n = {}", data.len())));
    }
    let chunks: Vec<Vec<usize>> = candidates
        .par_chunks(CHUNK)
        .map(|chunk| {
            budget.check()?;
            Ok(chunk
                .iter()
                .copied()
                .filter(|&c| index.count_within(data.point(c), epsilon, min_pts) >= min_pts)
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut cores: Vec<usize> = chunks.into_iter().flatten().collect();
    cores.sort_unstable();
    cores.dedup();
    Ok(CoreSet::from_sorted(cores))
}

/// Labels every point given a core set. See [`Assignment`] for the two modes.
pub fn cluster_from_cores(
    data: &Dataset,
    index: &SpatialIndex<'_>,
    cores: &CoreSet,
    epsilon: f64,
    epsilon_connect: f64,
    assignment: Assignment,
) -> Result<ClusterLabels> {
    let mut timings = PhaseTimings::default();
    cluster_from_cores_within(
        data,
        index,
        cores,
        epsilon,
        epsilon_connect,
        assignment,
        &Budget::unlimited(),
        &mut timings,
    )
}

#[allow(clippy::too_many_arguments)]
fn cluster_from_cores_within(
    data: &Dataset,
    index: &SpatialIndex<'_>,
    cores: &CoreSet,
    epsilon: f64,
    epsilon_connect: f64,
    assignment: Assignment,
    budget: &Budget,
    timings: &mut PhaseTimings,
) -> Result<ClusterLabels> {
    if !(epsilon_connect >= epsilon) {
        return Err(Error::param(
            "epsilon_connect",
            format!("must be >= epsilon = {epsilon}, got {epsilon_connect}"),
        ));
    }
    if let Some(&last) = cores.indices().last() {
        if last >= data.len() {
            return Err(Error::param("cores", format!("index {last} out of range for n = {}", data.len())));
        }
    }
    let n = data.len();
    if cores.is_empty() {
        return Ok(ClusterLabels::all_noise(n));
    }
    match assignment {
        Assignment::Graph => {
            let mut sets = DisjointSet::new(n);
            let mut in_graph = vec![false; n];
            for chunk in cores.indices().chunks(CHUNK) {
                budget.check()?;
                let started = Instant::now();
                let neighbours: Vec<Vec<usize>> = chunk
                    .par_iter()
                    .map(|&c| {
                        let mut buf = Vec::new();
                        index.range_into(data.point(c), epsilon_connect, &mut buf);
                        buf
                    })
                    .collect();
                timings.graph_build += millis(started.elapsed());
                let started = Instant::now();
                for (&c, list) in chunk.iter().zip(&neighbours) {
                    in_graph[c] = true;
                    for &j in list {
                        in_graph[j] = true;
                        sets.union(c, j);
                    }
                }
                timings.components += millis(started.elapsed());
            }
            let started = Instant::now();
            let labels = label_components(n, &mut sets, |i| in_graph[i]);
            timings.components += millis(started.elapsed());
            Ok(labels)
        }
        Assignment::NearestCore => {
            let started = Instant::now();
            let core_index = SpatialIndex::build_subset(data, cores.indices().to_vec())?;
            let core_links: Vec<Vec<usize>> = cores
                .indices()
                .par_iter()
                .map(|&c| {
                    let mut buf = Vec::new();
                    core_index.range_into(data.point(c), epsilon_connect, &mut buf);
                    buf
                })
                .collect();
            timings.graph_build += millis(started.elapsed());
            budget.check()?;

            let started = Instant::now();
            let mut sets = DisjointSet::new(n);
            for (&c, list) in cores.indices().iter().zip(&core_links) {
                for &j in list {
                    sets.union(c, j);
                }
            }
            timings.components += millis(started.elapsed());

            let started = Instant::now();
            let nearest: Vec<Option<usize>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    if cores.contains(i) {
                        Some(i)
                    } else {
                        core_index.nearest_unchecked(data.point(i), epsilon).map(|(c, _)| c)
                    }
                })
                .collect();
            let mut roots: Vec<Option<usize>> = nearest.iter().map(|c| c.map(|c| sets.find(c))).collect();
            let labels = label_by_roots(&mut roots);
            timings.assignment += millis(started.elapsed());
            Ok(labels)
        }
    }
}

fn label_components(n: usize, sets: &mut DisjointSet, member: impl Fn(usize) -> bool) -> ClusterLabels {
    let mut roots: Vec<Option<usize>> = (0..n).map(|i| member(i).then(|| sets.find(i))).collect();
    label_by_roots(&mut roots)
}

/// Dense ids by first occurrence of each root.
fn label_by_roots(roots: &mut [Option<usize>]) -> ClusterLabels {
    let mut ids = std::collections::HashMap::new();
    let labels = roots
        .iter()
        .map(|root| match root {
            None => NOISE,
            Some(r) => {
                let next = ids.len() as i64;
                *ids.entry(*r).or_insert(next)
            }
        })
        .collect();
    ClusterLabels::from_raw(labels)
}

/// DBSCAN: every point is a candidate core.
pub fn dbscan(
    data: &Dataset,
    epsilon: f64,
    min_pts: usize,
    epsilon_connect: f64,
    assignment: Assignment,
) -> Result<ClusteringResult> {
    let params = AlgoParams::new(epsilon, min_pts)
        .with_epsilon_connect(epsilon_connect)
        .with_assignment(assignment);
    Dbscan.cluster(data, &params, &Budget::unlimited())
}

/// DBSCAN++ with the sampling strategy named in `params`, resolved against the default registry.
pub fn dbscan_pp(data: &Dataset, params: &AlgoParams) -> Result<ClusteringResult> {
    DbscanPlusPlus::default().cluster(data, params, &Budget::unlimited())
}

fn run_pipeline(
    name: &str,
    data: &Dataset,
    params: &AlgoParams,
    sampler: Option<&dyn Sampler>,
    budget: &Budget,
) -> Result<ClusteringResult> {
    params.validate(data.len())?;
    let mut timings = PhaseTimings::default();

    let started = Instant::now();
    let sampled = match sampler {
        Some(sampler) => sampler.sample(data, params.resolved_m(data.len()), params.seed)?,
        None => (0..data.len()).collect(),
    };
    timings.sampling = millis(started.elapsed());
    budget.check()?;

    let started = Instant::now();
    let index = SpatialIndex::build(data)?;
    let cores = find_core_points_within(data, &index, &sampled, params.epsilon, params.min_pts, budget)?;
    timings.core_detection = millis(started.elapsed());

    let labels = cluster_from_cores_within(
        data,
        &index,
        &cores,
        params.epsilon,
        params.connect_radius(),
        params.assignment,
        budget,
        &mut timings,
    )?;

    let mut echo = params.clone();
    echo.m = Some(sampled.len());
    if sampler.is_none() {
        echo.strategy = "all".to_string();
    }
    Ok(ClusteringResult {
        algorithm: name.to_string(),
        labels,
        cores,
        sampled,
        params: echo,
        timings,
    })
}

/// A clustering algorithm selectable by name.
pub trait Clusterer: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn cluster(&self, data: &Dataset, params: &AlgoParams, budget: &Budget) -> Result<ClusteringResult>;
}

/// Ignores `m` and `strategy`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dbscan;

impl Clusterer for Dbscan {
    fn name(&self) -> &'static str {
        "dbscan"
    }

    fn cluster(&self, data: &Dataset, params: &AlgoParams, budget: &Budget) -> Result<ClusteringResult> {
        let mut params = params.clone();
        params.m = None;
        run_pipeline(self.name(), data, &params, None, budget)
    }
}

#[derive(Clone, Debug, Default)]
pub struct DbscanPlusPlus {
    samplers: SamplerRegistry,
}

impl DbscanPlusPlus {
    pub fn with_samplers(samplers: SamplerRegistry) -> Self {
        Self { samplers }
    }
}

impl Clusterer for DbscanPlusPlus {
    fn name(&self) -> &'static str {
        "dbscanpp"
    }

    fn cluster(&self, data: &Dataset, params: &AlgoParams, budget: &Budget) -> Result<ClusteringResult> {
        let sampler = self.samplers.get(&params.strategy)?;
        run_pipeline(self.name(), data, params, Some(sampler.as_ref()), budget)
    }
}

#[derive(Clone, Debug)]
pub struct AlgorithmRegistry {
    algorithms: BTreeMap<&'static str, Arc<dyn Clusterer>>,
}

impl AlgorithmRegistry {
    pub fn empty() -> Self {
        Self {
            algorithms: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, algorithm: Arc<dyn Clusterer>) -> Option<Arc<dyn Clusterer>> {
        self.algorithms.insert(algorithm.name(), algorithm)
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Clusterer>> {
        self.algorithms
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "algorithm",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.algorithms.keys().copied().collect()
    }
}

impl Default for AlgorithmRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(Arc::new(Dbscan));
        registry.register(Arc::new(DbscanPlusPlus::default()));
        registry
    }
}
