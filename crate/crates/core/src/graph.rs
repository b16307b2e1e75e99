//! Weighted feedback graphs.
//!
//! A [`FeedbackGraph`] is the concept class: vertices are candidate concepts
//! and an edge `(s, s')` means a user may answer `s'` when shown `s`. All-pairs
//! shortest-path distances are computed once at construction; every query
//! afterwards (version spaces, medians, neighborhoods) is answered from that
//! table.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Absolute tolerance used whenever two path lengths are compared.
pub const DIST_EPS: f64 = 1e-9;

/// A weighted edge `u -> v` (or `u -- v` in undirected graphs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge { u, v, w }
    }

    pub fn unit(u: usize, v: usize) -> Self {
        Edge { u, v, w: 1.0 }
    }
}

/// Immutable weighted graph with cached all-pairs shortest distances.
#[derive(Debug, Clone)]
pub struct FeedbackGraph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    /// Out-neighbors of each vertex, sorted by id, with the lightest parallel
    /// edge kept.
    adj: Vec<Vec<(usize, f64)>>,
    /// Row-major `n * n` distance table.
    dist: Vec<f64>,
}

#[derive(Copy, Clone, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize, out: &mut [f64]) {
    out.fill(f64::INFINITY);
    out[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(HeapEntry { dist, vertex }) = heap.pop() {
        if dist > out[vertex] {
            continue;
        }
        for &(next, w) in &adj[vertex] {
            let cand = dist + w;
            if cand < out[next] {
                out[next] = cand;
                heap.push(HeapEntry {
                    dist: cand,
                    vertex: next,
                });
            }
        }
    }
}

impl FeedbackGraph {
    /// Builds the graph and its distance table. Rejects bad endpoints,
    /// self-loops, non-positive or non-finite weights, and graphs that are
    /// not (strongly) connected.
    pub fn new(vertex_count: usize, edges: Vec<Edge>, directed: bool) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidParameter {
                name: "vertex_count",
                value: 0.0,
                reason: "a graph needs at least one vertex",
            });
        }
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); vertex_count];
        for e in &edges {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidEdge {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                    reason: "endpoint out of range",
                });
            }
            if e.u == e.v {
                return Err(Error::InvalidEdge {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                    reason: "self-loops are not allowed",
                });
            }
            if !(e.w.is_finite() && e.w > 0.0) {
                return Err(Error::InvalidEdge {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                    reason: "weight must be positive and finite",
                });
            }
            adj[e.u].push((e.v, e.w));
            if !directed {
                adj[e.v].push((e.u, e.w));
            }
        }
        for list in &mut adj {
            list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
            list.dedup_by_key(|x| x.0);
        }

        let n = vertex_count;
        let mut dist = vec![0.0; n * n];
        for (s, row) in dist.chunks_mut(n).enumerate() {
            dijkstra(&adj, s, row);
            if let Some(t) = row.iter().position(|d| !d.is_finite()) {
                return Err(Error::DisconnectedGraph { from: s, to: t });
            }
        }

        Ok(FeedbackGraph {
            n,
            directed,
            edges,
            adj,
            dist,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> f64 {
        self.dist[u * self.n + v]
    }

    /// Distances from `u` to every vertex.
    pub fn dist_row(&self, u: usize) -> &[f64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Out-neighbors of `v` with edge weights, ascending by id.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }

    pub fn neighbor_ids(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn is_neighbor(&self, q: usize, z: usize) -> bool {
        self.adj[q].binary_search_by_key(&z, |&(u, _)| u).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Maximum out-degree.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// True when `z` lies on some shortest path from `q` to `v`.
    #[inline]
    pub fn on_shortest_path(&self, q: usize, z: usize, v: usize) -> bool {
        (self.dist(q, z) + self.dist(z, v) - self.dist(q, v)).abs() <= DIST_EPS
    }

    /// Concepts consistent with answer `z` to query `q`: every `v` such that
    /// `z` lies on a shortest path from `q` to `v`. The answer `z == q` means
    /// "correct" and is consistent with `q` alone.
    pub fn version_space(&self, q: usize, z: usize) -> Result<Vec<usize>> {
        let mut mask = vec![false; self.n];
        self.version_space_mask(q, z, &mut mask)?;
        Ok(mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect())
    }

    /// Writes the version space into `mask` (resized to `n`).
    pub fn version_space_mask(&self, q: usize, z: usize, mask: &mut Vec<bool>) -> Result<()> {
        self.check_vertex(q)?;
        self.check_vertex(z)?;
        mask.clear();
        mask.resize(self.n, false);
        if z == q {
            mask[q] = true;
            return Ok(());
        }
        if !self.is_neighbor(q, z) {
            return Err(Error::NotNeighbor { q, z });
        }
        for (v, m) in mask.iter_mut().enumerate() {
            *m = self.on_shortest_path(q, z, v);
        }
        Ok(())
    }

    /// `sum_v weights[v] * dist(u, v)`.
    pub fn median_cost(&self, u: usize, weights: &[f64]) -> f64 {
        self.dist_row(u)
            .iter()
            .zip(weights)
            .map(|(d, l)| d * l)
            .sum()
    }

    /// Vertex minimizing the likelihood-weighted distance sum, smallest id on
    /// ties.
    pub fn weighted_median(&self, likelihood: &LikelihoodVector) -> usize {
        self.weighted_median_of(likelihood.values())
    }

    pub(crate) fn weighted_median_of(&self, weights: &[f64]) -> usize {
        debug_assert_eq!(weights.len(), self.n);
        let mut best = 0;
        let mut best_cost = f64::INFINITY;
        for u in 0..self.n {
            let cost = self.median_cost(u, weights);
            if cost < best_cost {
                best = u;
                best_cost = cost;
            }
        }
        best
    }

    /// Vertices other than `v` within shortest-path distance `m` of `v`.
    pub fn m_neighborhood(&self, v: usize, m: usize) -> Vec<usize> {
        let limit = m as f64 + DIST_EPS;
        self.dist_row(v)
            .iter()
            .enumerate()
            .filter(|&(u, &d)| u != v && d <= limit)
            .map(|(u, _)| u)
            .collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Vertex minimizing the unweighted distance sum (the starting query of
    /// the follow-the-feedback learner).
    pub fn center(&self) -> usize {
        self.weighted_median_of(&vec![1.0; self.n])
    }
}

/// Standard graph families, all with unit weights and undirected.
pub mod families {
    use super::{Edge, FeedbackGraph};
    use crate::error::Result;

    pub fn clique(n: usize) -> Result<FeedbackGraph> {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge::unit(u, v));
            }
        }
        FeedbackGraph::new(n, edges, false)
    }

    /// Center vertex 0 joined to leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Result<FeedbackGraph> {
        let edges = (1..=leaves).map(|v| Edge::unit(0, v)).collect();
        FeedbackGraph::new(leaves + 1, edges, false)
    }

    pub fn path(n: usize) -> Result<FeedbackGraph> {
        let edges = (1..n).map(|v| Edge::unit(v - 1, v)).collect();
        FeedbackGraph::new(n, edges, false)
    }

    pub fn cycle(n: usize) -> Result<FeedbackGraph> {
        if n < 3 {
            return path(n);
        }
        let edges = (0..n).map(|v| Edge::unit(v, (v + 1) % n)).collect();
        FeedbackGraph::new(n, edges, false)
    }

    /// Center vertex 0 with `branches` disjoint paths of `branch_len` vertices
    /// each. Branch `b` occupies ids `1 + b * branch_len ..`, ordered outward.
    pub fn quasi_star(branches: usize, branch_len: usize) -> Result<FeedbackGraph> {
        let mut edges = Vec::with_capacity(branches * branch_len);
        for b in 0..branches {
            let first = 1 + b * branch_len;
            edges.push(Edge::unit(0, first));
            for i in 1..branch_len {
                edges.push(Edge::unit(first + i - 1, first + i));
            }
        }
        FeedbackGraph::new(1 + branches * branch_len, edges, false)
    }
}

/// Non-negative weights over the vertices of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodVector {
    values: Vec<f64>,
}

impl LikelihoodVector {
    /// Rejects negative or non-finite entries and all-zero vectors.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&x) = values.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "likelihood",
                value: x,
                reason: "entries must be finite and non-negative",
            });
        }
        if !values.iter().any(|&x| x > 0.0) {
            return Err(Error::InvalidParameter {
                name: "likelihood",
                value: 0.0,
                reason: "at least one entry must be positive",
            });
        }
        Ok(LikelihoodVector { values })
    }

    pub fn uniform(n: usize) -> Self {
        LikelihoodVector {
            values: vec![1.0 / n as f64; n],
        }
    }

    /// All mass on `v`.
    pub fn point(n: usize, v: usize) -> Self {
        let mut values = vec![0.0; n];
        values[v] = 1.0;
        LikelihoodVector { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn normalize(&mut self) {
        let total = self.total();
        for x in &mut self.values {
            *x /= total;
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn mass_of(&self, vertices: &[usize]) -> f64 {
        vertices.iter().map(|&v| self.values[v]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn path_distances() {
        let g = FeedbackGraph::new(3, vec![Edge::unit(0, 1), Edge::unit(1, 2)], false).unwrap();
        assert_eq!(g.dist(0, 2), 2.0);
        assert_eq!(g.dist(2, 0), 2.0);
    }

    #[test]
    fn rejects_disconnected_and_bad_edges() {
        assert!(matches!(
            FeedbackGraph::new(2, vec![], false),
            Err(Error::DisconnectedGraph { .. })
        ));
        assert!(matches!(
            FeedbackGraph::new(2, vec![Edge::new(0, 2, 1.0)], false),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            FeedbackGraph::new(2, vec![Edge::new(0, 1, 0.0)], false),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            FeedbackGraph::new(2, vec![Edge::new(0, 1, -1.0)], false),
            Err(Error::InvalidEdge { .. })
        ));
        // one-way edge: not strongly connected
        assert!(matches!(
            FeedbackGraph::new(2, vec![Edge::unit(0, 1)], true),
            Err(Error::DisconnectedGraph { from: 1, to: 0 })
        ));
    }

    #[test]
    fn four_cycle() {
        let g = cycle(4).unwrap();
        assert_eq!(g.dist(0, 2), 2.0);
        assert_eq!(g.dist(0, 1), 1.0);
        assert_eq!(g.version_space(0, 1).unwrap(), vec![1, 2]);
    }

    #[test]
    fn version_space_on_path() {
        let g = path(4).unwrap();
        assert_eq!(g.version_space(1, 2).unwrap(), vec![2, 3]);
        assert_eq!(g.version_space(1, 0).unwrap(), vec![0]);
    }

    #[test]
    fn self_feedback_is_singleton() {
        let g = star(4).unwrap();
        assert_eq!(g.version_space(0, 0).unwrap(), vec![0]);
    }

    #[test]
    fn version_space_requires_neighbor() {
        let g = path(4).unwrap();
        assert_eq!(g.version_space(0, 2), Err(Error::NotNeighbor { q: 0, z: 2 }));
    }

    #[test]
    fn medians() {
        let g = path(3).unwrap();
        assert_eq!(g.weighted_median(&LikelihoodVector::uniform(3)), 1);

        let g = path(8).unwrap();
        assert_eq!(g.weighted_median(&LikelihoodVector::point(8, 5)), 5);

        // star center cost 4, leaf cost 1 + 3*2 = 7
        let g = star(4).unwrap();
        assert_eq!(g.median_cost(0, &[1.0; 5]), 4.0);
        assert_eq!(g.median_cost(1, &[1.0; 5]), 7.0);
        assert_eq!(g.weighted_median(&LikelihoodVector::uniform(5)), 0);
    }

    #[test]
    fn neighborhoods() {
        let g = path(4).unwrap();
        assert_eq!(g.m_neighborhood(0, 2), vec![1, 2]);
        assert_eq!(g.m_neighborhood(1, 1), vec![0, 2]);
        let k = clique(5).unwrap();
        assert_eq!(k.m_neighborhood(3, 1), vec![0, 1, 2, 4]);
    }

    #[test]
    fn diameters() {
        assert_eq!(clique(6).unwrap().diameter(), 1.0);
        assert_eq!(path(7).unwrap().diameter(), 6.0);
        assert_eq!(cycle(6).unwrap().diameter(), 3.0);
        assert_eq!(quasi_star(3, 2).unwrap().diameter(), 4.0);
    }

    #[test]
    fn centers() {
        assert_eq!(star(5).unwrap().center(), 0);
        assert_eq!(path(5).unwrap().center(), 2);
        assert_eq!(cycle(4).unwrap().center(), 0);
    }

    #[test]
    fn parallel_edges_keep_lightest() {
        let g = FeedbackGraph::new(
            2,
            vec![Edge::new(0, 1, 3.0), Edge::new(1, 0, 1.5)],
            false,
        )
        .unwrap();
        assert_eq!(g.neighbors(0), &[(1, 1.5)]);
        assert_eq!(g.dist(0, 1), 1.5);
    }

    #[test]
    fn likelihood_validation() {
        assert!(LikelihoodVector::new(vec![0.0, 0.0]).is_err());
        assert!(LikelihoodVector::new(vec![-1.0, 2.0]).is_err());
        let l = LikelihoodVector::new(vec![1.0, 3.0]).unwrap().normalized();
        assert_eq!(l.values(), &[0.25, 0.75]);
    }
}
