//! Exact Euclidean range and radius-bounded nearest-neighbour search over a
//! static KD-tree.
//!
//! The tree splits on the coordinate with the widest spread at the median and
//! stores an axis-aligned bounding box per node. Queries prune nodes whose box
//! lies outside the query ball and accept whole nodes whose box lies inside
//! it. All comparisons are made on squared distances against the squared
//! radius, with closed-ball (`<=`) semantics.

use crate::dataset::{squared_distance, Dataset};
use crate::error::{Error, Result};

const LEAF_SIZE: usize = 16;

#[derive(Clone, Copy, Debug)]
struct Node {
    start: usize,
    end: usize,
    /// Child node ids; `None` for leaves.
    children: Option<(usize, usize)>,
}

/// Immutable KD-tree over (a subset of) the points of a [`Dataset`].
///
/// Query results are always indices into the original dataset.
#[derive(Clone, Debug)]
pub struct SpatialIndex<'a> {
    data: &'a Dataset,
    order: Vec<usize>,
    nodes: Vec<Node>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl<'a> SpatialIndex<'a> {
    pub fn build(data: &'a Dataset) -> Result<Self> {
        Self::build_subset(data, (0..data.len()).collect())
    }

    /// Index over only the given points. Duplicate indices are rejected.
    pub fn build_subset(data: &'a Dataset, mut order: Vec<usize>) -> Result<Self> {
        if order.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        {
            let mut check = order.clone();
            check.sort_unstable();
            if check.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param("indices", "duplicate index in subset"));
            }
            if *check.last().unwrap() >= data.len() {
                return Err(Error::param("indices", "index out of range"));
            }
        }
        let dim = data.dim();
        let mut index = SpatialIndex {
            data,
            order: Vec::new(),
            nodes: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
        };
        let len = order.len();
        index.build_node(&mut order, 0, len, dim);
        index.order = order;
        Ok(index)
    }

    fn build_node(&mut self, order: &mut [usize], start: usize, end: usize, dim: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node {
            start,
            end,
            children: None,
        });
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for &i in &order[start..end] {
            for (d, &c) in self.data.point(i).iter().enumerate() {
                lo[d] = lo[d].min(c);
                hi[d] = hi[d].max(c);
            }
        }
        let split_dim = (0..dim)
            .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])).then(b.cmp(&a)))
            .unwrap_or(0);
        let spread = hi[split_dim] - lo[split_dim];
        self.lo.extend_from_slice(&lo);
        self.hi.extend_from_slice(&hi);

        if end - start <= LEAF_SIZE || spread == 0.0 {
            return id;
        }
        let mid = start + (end - start) / 2;
        let data = self.data;
        order[start..end].select_nth_unstable_by(mid - start, |&a, &b| {
            data.point(a)[split_dim]
                .total_cmp(&data.point(b)[split_dim])
                .then(a.cmp(&b))
        });
        let left = self.build_node(order, start, mid, dim);
        let right = self.build_node(order, mid, end, dim);
        self.nodes[id].children = Some((left, right));
        id
    }

    pub fn dataset(&self) -> &'a Dataset {
        self.data
    }

    /// Number of indexed points.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn check_dim(&self, query: &[f64]) -> Result<()> {
        if query.len() != self.data.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.data.dim(),
                actual: query.len(),
            });
        }
        Ok(())
    }

    fn check_radius(radius: f64) -> Result<()> {
        if !(radius >= 0.0) {
            return Err(Error::param("radius", format!("must be >= 0, got {radius}")));
        }
        Ok(())
    }

    #[inline]
    fn bounds(&self, node: usize) -> (&[f64], &[f64]) {
        let d = self.data.dim();
        (&self.lo[node * d..(node + 1) * d], &self.hi[node * d..(node + 1) * d])
    }

    /// Squared distances from `q` to the nearest and farthest points of a node's box.
    #[inline]
    fn box_distances(&self, node: usize, q: &[f64]) -> (f64, f64) {
        let (lo, hi) = self.bounds(node);
        let mut near = 0.0;
        let mut far = 0.0;
        for ((&x, &l), &h) in q.iter().zip(lo).zip(hi) {
            let below = l - x;
            let above = x - h;
            let gap = below.max(above).max(0.0);
            near += gap * gap;
            let span = (x - l).abs().max((h - x).abs());
            far += span * span;
        }
        (near, far)
    }

    /// Indices `i` with `|x_i - center| <= radius`, ascending.
    pub fn range_query(&self, center: &[f64], radius: f64) -> Result<Vec<usize>> {
        self.check_dim(center)?;
        Self::check_radius(radius)?;
        let mut out = Vec::new();
        self.range_into(center, radius, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    /// Unsorted range query into a reusable buffer; `center` must have dimension `D`.
    pub(crate) fn range_into(&self, center: &[f64], radius: f64, out: &mut Vec<usize>) {
        let r2 = radius * radius;
        let mut stack = vec![0usize];
        while let Some(node_id) = stack.pop() {
            let (near, far) = self.box_distances(node_id, center);
            if near > r2 {
                continue;
            }
            let node = self.nodes[node_id];
            if far <= r2 {
                out.extend_from_slice(&self.order[node.start..node.end]);
                continue;
            }
            match node.children {
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
                None => out.extend(
                    self.order[node.start..node.end]
                        .iter()
                        .copied()
                        .filter(|&i| squared_distance(self.data.point(i), center) <= r2),
                ),
            }
        }
    }

    /// Number of indexed points within `radius` of `center`, stopping once `cap` is reached.
    pub(crate) fn count_within(&self, center: &[f64], radius: f64, cap: usize) -> usize {
        let r2 = radius * radius;
        let mut count = 0;
        let mut stack = vec![0usize];
        while let Some(node_id) = stack.pop() {
            let (near, far) = self.box_distances(node_id, center);
            if near > r2 {
                continue;
            }
            let node = self.nodes[node_id];
            if far <= r2 {
                count += node.end - node.start;
            } else {
                match node.children {
                    Some((l, r)) => {
                        stack.push(r);
                        stack.push(l);
                        continue;
                    }
                    None => {
                        count += self.order[node.start..node.end]
                            .iter()
                            .filter(|&&i| squared_distance(self.data.point(i), center) <= r2)
                            .count();
                    }
                }
            }
            if count >= cap {
                return count;
            }
        }
        count
    }

    /// Closest indexed point with distance `<= radius`; ties go to the smaller index.
    /// Returns the index and the Euclidean distance.
    pub fn nearest_within(&self, query: &[f64], radius: f64) -> Result<Option<(usize, f64)>> {
        self.check_dim(query)?;
        Self::check_radius(radius)?;
        Ok(self.nearest_unchecked(query, radius))
    }

    pub(crate) fn nearest_unchecked(&self, query: &[f64], radius: f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut bound = radius * radius;
        let mut stack = vec![(0usize, 0.0f64)];
        while let Some((node_id, near)) = stack.pop() {
            if near > bound {
                continue;
            }
            let node = self.nodes[node_id];
            match node.children {
                Some((l, r)) => {
                    let (nl, _) = self.box_distances(l, query);
                    let (nr, _) = self.box_distances(r, query);
                    // Visit the closer child first.
                    if nl <= nr {
                        stack.push((r, nr));
                        stack.push((l, nl));
                    } else {
                        stack.push((l, nl));
                        stack.push((r, nr));
                    }
                }
                None => {
                    for &i in &self.order[node.start..node.end] {
                        let d2 = squared_distance(self.data.point(i), query);
                        if d2 > bound {
                            continue;
                        }
                        let better = match best {
                            None => true,
                            Some((bi, bd2)) => d2 < bd2 || (d2 == bd2 && i < bi),
                        };
                        if better {
                            best = Some((i, d2));
                            bound = d2;
                        }
                    }
                }
            }
        }
        best.map(|(i, d2)| (i, d2.sqrt()))
    }
}
