//! Density clustering with DBSCAN and DBSCAN++.
//!
//! DBSCAN++ evaluates the density of only `m` sampled points (chosen uniformly
//! or by greedy K-center) instead of all `n`, then clusters the whole dataset
//! around the core points it found. The crate also provides an exact KD-tree,
//! clustering-quality metrics, data loaders and generators, the hyperparameter
//! formulas for density level-set estimation, and an experiment harness.

pub mod bench;
pub mod cluster;
pub mod data;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod labels;
pub mod params;
pub mod rng;
pub mod sampling;
pub mod spatial;
pub mod union_find;

pub use cluster::{
    cluster_from_cores, dbscan, dbscan_pp, find_core_points, AlgoParams, AlgorithmRegistry, Assignment, Budget,
    Clusterer, ClusteringResult, Dbscan, DbscanPlusPlus, PhaseTimings,
};
pub use dataset::Dataset;
pub use error::{Error, Result};
pub use labels::{ClusterLabels, CoreSet, NOISE};
pub use sampling::{sample_kcenter, sample_uniform, Sampler, SamplerRegistry};
pub use spatial::SpatialIndex;
