//! Candidate-subset selection for DBSCAN++.
//!
//! Each strategy implements [`Sampler`] and is looked up by name through a
//! [`SamplerRegistry`]. The built-in registry holds `uniform` and `kcenter`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::dataset::{squared_distance, Dataset};
use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Chooses `m` distinct point indices of a dataset. Output is sorted ascending.
pub trait Sampler: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn sample(&self, data: &Dataset, m: usize, seed: u64) -> Result<Vec<usize>>;
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::param("m", format!("must satisfy 1 <= m <= n = {n}, got {m}")));
    }
    Ok(())
}

/// `m` indices drawn without replacement by a partial Fisher–Yates shuffle.
pub fn sample_uniform(n: usize, m: usize, seed: u64) -> Result<Vec<usize>> {
    check_m(n, m)?;
    let mut rng = SeededRng::new(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = i + rng.below((n - i) as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(m);
    pool.sort_unstable();
    Ok(pool)
}

/// Greedy farthest-point selection starting from index 0.
///
/// Each step adds the point maximizing the distance to the current set,
/// with ties going to the smallest index.
///
/// Points are grouped by their nearest centre, and each group keeps its
/// farthest member. A new centre `c` can only take points from a group
/// with centre `a` when `d(a, c) <= 2 * radius(a)`, so the other groups
/// are not rescanned. The selection is the same as the plain traversal.
pub fn sample_kcenter(data: &Dataset, m: usize) -> Result<Vec<usize>> {
    check_m(data.len(), m)?;
    let n = data.len();
    let first = data.point(0);
    let mut nearest: Vec<f64> = data.points().map(|p| squared_distance(p, first)).collect();
    let mut groups: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut far: Vec<(f64, usize)> = vec![farthest(&groups[0], &nearest)];
    let mut chosen = vec![0usize];
    while chosen.len() < m {
        // Global argmax: largest distance, then smallest index.
        let (_, current) = far
            .iter()
            .copied()
            .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
            .expect("at least one centre");
        chosen.push(current);
        let centre = data.point(current);
        let mut taken = Vec::new();
        for g in 0..groups.len() {
            let gap = squared_distance(data.point(chosen[g]), centre);
            // Margin keeps the skip safe against rounding.
            if gap > 4.0 * far[g].0 * (1.0 + 1e-9) {
                continue;
            }
            groups[g].retain(|&i| {
                let d2 = squared_distance(data.point(i), centre);
                if d2 < nearest[i] {
                    nearest[i] = d2;
                    taken.push(i);
                    false
                } else {
                    true
                }
            });
            far[g] = farthest(&groups[g], &nearest);
        }
        far.push(farthest(&taken, &nearest));
        groups.push(taken);
    }
    chosen.sort_unstable();
    // Fewer distinct locations than m: every remaining distance is zero and the
    // argmax falls back to an already-chosen index. Top up with the smallest unused indices.
    chosen.dedup();
    if chosen.len() < m {
        let mut used = vec![false; n];
        for &c in &chosen {
            used[c] = true;
        }
        let extra: Vec<usize> = (0..n).filter(|&i| !used[i]).take(m - chosen.len()).collect();
        chosen.extend(extra);
        chosen.sort_unstable();
    }
    Ok(chosen)
}

/// Largest `nearest` value among `members`, smallest index on ties.
fn farthest(members: &[usize], nearest: &[f64]) -> (f64, usize) {
    members
        .iter()
        .fold((f64::NEG_INFINITY, usize::MAX), |(d, arg), &i| {
            if nearest[i] > d || (nearest[i] == d && i < arg) {
                (nearest[i], i)
            } else {
                (d, arg)
            }
        })
}

/// Covering radius `max_x min_{s in S} |x - s|` of a subset.
pub fn kcenter_objective(data: &Dataset, subset: &[usize]) -> f64 {
    data.points()
        .map(|p| {
            subset
                .iter()
                .map(|&s| squared_distance(p, data.point(s)))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
        .sqrt()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct UniformSampler;

impl Sampler for UniformSampler {
    fn name(&self) -> &'static str {
        "uniform"
    }

    fn sample(&self, data: &Dataset, m: usize, seed: u64) -> Result<Vec<usize>> {
        sample_uniform(data.len(), m, seed)
    }
}

/// Deterministic; the seed is ignored.
#[derive(Clone, Copy, Debug, Default)]
pub struct KCenterSampler;

impl Sampler for KCenterSampler {
    fn name(&self) -> &'static str {
        "kcenter"
    }

    fn sample(&self, data: &Dataset, m: usize, _seed: u64) -> Result<Vec<usize>> {
        sample_kcenter(data, m)
    }
}

#[derive(Clone, Debug)]
pub struct SamplerRegistry {
    samplers: BTreeMap<&'static str, Arc<dyn Sampler>>,
}

impl SamplerRegistry {
    pub fn empty() -> Self {
        Self {
            samplers: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, sampler: Arc<dyn Sampler>) -> Option<Arc<dyn Sampler>> {
        self.samplers.insert(sampler.name(), sampler)
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Sampler>> {
        self.samplers
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "sampling strategy",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.samplers.keys().copied().collect()
    }
}

impl Default for SamplerRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(Arc::new(UniformSampler));
        registry.register(Arc::new(KCenterSampler));
        registry
    }
}
