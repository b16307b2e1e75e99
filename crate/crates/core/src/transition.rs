//! Transition graphs: how the target may evolve between rounds.
//!
//! Each vertex of a [`TransitionGraph`] is a copy of some feedback-graph
//! vertex (its *base*). Several copies of one base may exist when the
//! evolution model needs memory, e.g. the shifting model keeps one copy of
//! each vertex per candidate `k`-subset. Every vertex keeps probability
//! `1 - b` on itself and splits `b` uniformly over its out-arcs; a vertex
//! without out-arcs keeps all of its mass.

use std::collections::HashMap;

use crate::error::{check_probability, Error, Result};
use crate::graph::{FeedbackGraph, DIST_EPS};

/// Upper limit on duplicated vertices.
pub const MAX_DUP_VERTICES: u128 = 10_000_000;
/// Upper limit on non-self arcs.
pub const MAX_ARCS: u128 = 100_000_000;

#[derive(Debug, Clone)]
pub struct TransitionGraph {
    base_count: usize,
    base_of: Vec<usize>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    move_prob: f64,
    max_out_degree: usize,
    /// Offsets of connected components into the vertex range; `components[i]..components[i+1]`.
    components: Vec<usize>,
}

fn guard(what: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        return Err(Error::TooLarge {
            what,
            requested,
            limit,
        });
    }
    Ok(())
}

/// `C(n, k)` in `u128`, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

impl TransitionGraph {
    /// Builds a transition graph from explicit out-lists. `out[u]` must not
    /// contain `u` itself; duplicates are removed.
    pub fn from_out_lists(
        base_count: usize,
        base_of: Vec<usize>,
        out: Vec<Vec<usize>>,
        move_prob: f64,
    ) -> Result<Self> {
        check_probability("b", move_prob)?;
        if base_of.len() != out.len() {
            return Err(Error::InvalidParameter {
                name: "out_lists",
                value: out.len() as f64,
                reason: "one out-list per duplicated vertex is required",
            });
        }
        let n = base_of.len();
        guard("duplicated vertices", n as u128, MAX_DUP_VERTICES)?;
        if let Some(&b) = base_of.iter().find(|&&b| b >= base_count) {
            return Err(Error::VertexOutOfRange {
                vertex: b,
                n: base_count,
            });
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for (u, mut list) in out.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&v) = list.iter().find(|&&v| v >= n || v == u) {
                return Err(Error::InvalidParameter {
                    name: "arc",
                    value: v as f64,
                    reason: "arc target out of range or a self-loop",
                });
            }
            targets.extend(list);
            guard("transition arcs", targets.len() as u128, MAX_ARCS)?;
            offsets.push(targets.len());
        }
        let mut g = TransitionGraph {
            base_count,
            base_of,
            offsets,
            targets,
            move_prob,
            max_out_degree: 0,
            components: vec![0, n],
        };
        g.max_out_degree = (0..n).map(|u| g.out_degree(u)).max().unwrap_or(0);
        Ok(g)
    }

    fn with_components(mut self, components: Vec<usize>) -> Self {
        self.components = components;
        self
    }

    /// The target moves along the edges of the feedback graph itself.
    pub fn drifting(g: &FeedbackGraph, b: f64) -> Result<Self> {
        let n = g.vertex_count();
        let out = (0..n).map(|v| g.neighbor_ids(v).collect()).collect();
        Self::from_out_lists(n, (0..n).collect(), out, b)
    }

    /// The target moves inside an unknown `k`-subset of the `n` vertices: one
    /// `k`-clique per subset, in lexicographic subset order.
    pub fn shifting(n: usize, k: usize, b: f64) -> Result<Self> {
        check_probability("b", b)?;
        if k == 0 || k > n {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k as f64,
                reason: "need 1 <= k <= n",
            });
        }
        let subsets = binomial(n as u64, k as u64).ok_or_else(|| {
            Error::Overflow(format!("C({n}, {k}) does not fit in 128 bits"))
        })?;
        let dups = subsets.saturating_mul(k as u128);
        guard("duplicated vertices", dups, MAX_DUP_VERTICES)?;
        guard(
            "transition arcs",
            dups.saturating_mul(k as u128 - 1),
            MAX_ARCS,
        )?;

        let dups = dups as usize;
        let mut base_of = Vec::with_capacity(dups);
        let mut out = Vec::with_capacity(dups);
        let mut components = Vec::with_capacity(subsets as usize + 1);
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let first = base_of.len();
            components.push(first);
            for (i, &v) in subset.iter().enumerate() {
                base_of.push(v);
                out.push((0..k).filter(|&j| j != i).map(|j| first + j).collect());
            }
            // next k-subset in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
                break;
            };
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
        components.push(base_of.len());
        Ok(Self::from_out_lists(n, base_of, out, b)?.with_components(components))
    }

    /// The target walks forward along a shortest path of `G`, visiting at most
    /// `max_moves` distinct vertices. One directed path component per vertex
    /// set that occurs, in order, on some shortest path, kept once.
    pub fn shortest_path(g: &FeedbackGraph, max_moves: usize, b: f64) -> Result<Self> {
        check_probability("b", b)?;
        if max_moves == 0 {
            return Err(Error::InvalidParameter {
                name: "B",
                value: 0.0,
                reason: "shortest-path model needs B >= 1",
            });
        }
        let chains = geodesic_chains(g, max_moves)?;
        let mut base_of = Vec::new();
        let mut out = Vec::new();
        let mut components = Vec::with_capacity(chains.len() + 1);
        for chain in &chains {
            let first = base_of.len();
            components.push(first);
            for (i, &v) in chain.iter().enumerate() {
                base_of.push(v);
                out.push(if i + 1 < chain.len() {
                    vec![first + i + 1]
                } else {
                    Vec::new()
                });
            }
        }
        components.push(base_of.len());
        Ok(Self::from_out_lists(g.vertex_count(), base_of, out, b)?.with_components(components))
    }

    /// The target jumps to any vertex within shortest-path distance `m`.
    pub fn m_neighborhood(g: &FeedbackGraph, m: usize, b: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter {
                name: "m",
                value: 0.0,
                reason: "need m >= 1",
            });
        }
        let n = g.vertex_count();
        let out: Vec<Vec<usize>> = (0..n).map(|v| g.m_neighborhood(v, m)).collect();
        let t = Self::from_out_lists(n, (0..n).collect(), out, b)?;
        let unit_or_heavier = g.edges().iter().all(|e| e.w >= 1.0 - DIST_EPS);
        debug_assert!(
            !unit_or_heavier
                || (t.max_out_degree as f64) <= (g.max_degree() as f64).powi(m as i32) + 0.5
        );
        Ok(t)
    }

    /// The target may jump anywhere.
    pub fn complete(n: usize, b: f64) -> Result<Self> {
        let vertices: Vec<usize> = (0..n).collect();
        Self::complete_over(n, &vertices, b)
    }

    /// Complete transitions restricted to `vertices` (each a base vertex of a
    /// feedback graph with `base_count` vertices).
    pub fn complete_over(base_count: usize, vertices: &[usize], b: f64) -> Result<Self> {
        let k = vertices.len() as u128;
        guard(
            "transition arcs",
            k.saturating_mul(k.saturating_sub(1)),
            MAX_ARCS,
        )?;
        let out = (0..vertices.len())
            .map(|u| (0..vertices.len()).filter(|&v| v != u).collect())
            .collect();
        Self::from_out_lists(base_count, vertices.to_vec(), out, b)
    }

    /// `n'`.
    pub fn dup_count(&self) -> usize {
        self.base_of.len()
    }

    /// Number of vertices of the underlying feedback graph.
    pub fn base_count(&self) -> usize {
        self.base_count
    }

    #[inline]
    pub fn base_of(&self, u: usize) -> usize {
        self.base_of[u]
    }

    pub fn bases(&self) -> &[usize] {
        &self.base_of
    }

    /// `b`.
    pub fn move_prob(&self) -> f64 {
        self.move_prob
    }

    /// `Δ'`, the largest out-degree excluding self-loops.
    pub fn max_out_degree(&self) -> usize {
        self.max_out_degree
    }

    /// `b / Δ'`, or 0 when no vertex can move.
    pub fn pi_out(&self) -> f64 {
        if self.max_out_degree == 0 {
            0.0
        } else {
            self.move_prob / self.max_out_degree as f64
        }
    }

    #[inline]
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn out_degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    #[inline]
    pub fn self_prob(&self, u: usize) -> f64 {
        if self.out_degree(u) == 0 {
            1.0
        } else {
            1.0 - self.move_prob
        }
    }

    /// Probability on each non-self arc out of `u`.
    #[inline]
    pub fn arc_prob(&self, u: usize) -> f64 {
        match self.out_degree(u) {
            0 => 0.0,
            d => self.move_prob / d as f64,
        }
    }

    /// All arcs out of `u` with probabilities, self-loop first.
    pub fn arcs(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let p = self.arc_prob(u);
        std::iter::once((u, self.self_prob(u))).chain(self.out_neighbors(u).iter().map(move |&v| (v, p)))
    }

    /// Component boundaries: component `c` spans `bounds[c]..bounds[c + 1]`.
    pub fn component_bounds(&self) -> &[usize] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len() - 1
    }

    /// Base-vertex sequences of each component, in vertex order.
    pub fn component_bases(&self) -> Vec<Vec<usize>> {
        self.components
            .windows(2)
            .map(|w| self.base_of[w[0]..w[1]].to_vec())
            .collect()
    }

    /// Duplicated vertices per base vertex.
    pub fn dup_counts_per_base(&self) -> Vec<usize> {
        let mut counts = vec![0; self.base_count];
        for &b in &self.base_of {
            counts[b] += 1;
        }
        counts
    }
}

/// Vertex sequences `v1, ..., vj` (`1 <= j <= max_len`) lying in order on a
/// shortest path, deduplicated by vertex set and sorted by that set. The
/// representative of each set is its lexicographically smallest ordering.
pub(crate) fn geodesic_chains(g: &FeedbackGraph, max_len: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut total_vertices: u128 = 0;
    let mut stack: Vec<usize> = Vec::with_capacity(max_len);

    fn extend(
        g: &FeedbackGraph,
        max_len: usize,
        stack: &mut Vec<usize>,
        seen: &mut HashMap<Vec<usize>, Vec<usize>>,
        total: &mut u128,
    ) -> Result<()> {
        let mut key = stack.clone();
        key.sort_unstable();
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
            *total += stack.len() as u128;
            guard("duplicated vertices", *total, MAX_DUP_VERTICES)?;
            slot.insert(stack.clone());
        }
        if stack.len() == max_len {
            return Ok(());
        }
        let start = stack[0];
        let last = *stack.last().expect("non-empty");
        for w in 0..g.vertex_count() {
            if w != last && g.on_shortest_path(start, last, w) {
                stack.push(w);
                extend(g, max_len, stack, seen, total)?;
                stack.pop();
            }
        }
        Ok(())
    }

    for v in 0..n {
        stack.push(v);
        extend(g, max_len, &mut stack, &mut seen, &mut total_vertices)?;
        stack.pop();
    }
    let mut chains: Vec<(Vec<usize>, Vec<usize>)> = seen.into_iter().collect();
    chains.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(chains.into_iter().map(|(_, seq)| seq).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn assert_stochastic(t: &TransitionGraph) {
        for u in 0..t.dup_count() {
            let total: f64 = t.arcs(u).map(|(_, p)| p).sum();
            assert!((total - 1.0).abs() < 1e-12, "row {u} sums to {total}");
        }
    }

    #[test]
    fn drifting_on_four_cycle() {
        let t = TransitionGraph::drifting(&cycle(4).unwrap(), 0.2).unwrap();
        assert_eq!(t.dup_count(), 4);
        assert_eq!(t.max_out_degree(), 2);
        for u in 0..4 {
            let arcs: Vec<_> = t.arcs(u).collect();
            assert_eq!(arcs.len(), 3);
            assert!((arcs[0].1 - 0.8).abs() < 1e-15);
            assert!((arcs[1].1 - 0.1).abs() < 1e-15);
            assert!((arcs[2].1 - 0.1).abs() < 1e-15);
        }
        assert_stochastic(&t);
    }

    #[test]
    fn drifting_identity_and_clique() {
        let t = TransitionGraph::drifting(&path(3).unwrap(), 0.0).unwrap();
        for u in 0..3 {
            assert_eq!(t.self_prob(u), 1.0);
            assert_eq!(t.arc_prob(u), 0.0);
        }
        let t = TransitionGraph::drifting(&clique(5).unwrap(), 0.4).unwrap();
        assert!((t.arc_prob(0) - 0.1).abs() < 1e-15);
        assert_eq!(t.max_out_degree(), 4);
    }

    #[test]
    fn shifting_sizes() {
        let t = TransitionGraph::shifting(4, 2, 0.3).unwrap();
        assert_eq!(t.dup_count(), 12);
        assert_eq!(t.component_count(), 6);
        assert_eq!(
            t.component_bases(),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(t.max_out_degree(), 1);

        let t = TransitionGraph::shifting(6, 1, 0.3).unwrap();
        assert_eq!(t.dup_count(), 6);
        assert_eq!(t.max_out_degree(), 0);
        assert!((0..6).all(|u| t.self_prob(u) == 1.0));

        let t = TransitionGraph::shifting(5, 3, 0.3).unwrap();
        for u in 0..t.dup_count() {
            assert!((t.self_prob(u) - 0.7).abs() < 1e-15);
            assert_eq!(t.out_degree(u), 2);
            assert!((t.arc_prob(u) - 0.15).abs() < 1e-15);
        }
        assert_stochastic(&t);
    }

    #[test]
    fn shifting_guards() {
        assert!(matches!(
            TransitionGraph::shifting(60, 30, 0.1),
            Err(Error::TooLarge { .. })
        ));
        assert!(TransitionGraph::shifting(3, 4, 0.1).is_err());
        assert!(TransitionGraph::shifting(3, 0, 0.1).is_err());
    }

    #[test]
    fn shortest_path_on_short_path() {
        let g = path(3).unwrap();
        let t = TransitionGraph::shortest_path(&g, 2, 0.1).unwrap();
        assert_eq!(
            t.component_bases(),
            vec![vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]
        );
        assert_eq!(t.max_out_degree(), 1);
        assert_stochastic(&t);

        let t = TransitionGraph::shortest_path(&g, 1, 0.1).unwrap();
        assert_eq!(t.component_bases(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(t.max_out_degree(), 0);
    }

    #[test]
    fn shortest_path_on_path_hits_binomial_count() {
        for (n, b) in [(4, 2), (5, 3), (6, 6), (7, 3)] {
            let t = TransitionGraph::shortest_path(&path(n).unwrap(), b, 0.1).unwrap();
            let full = t
                .component_bases()
                .iter()
                .filter(|c| c.len() == b)
                .count() as u128;
            assert_eq!(full, binomial(n as u64, b as u64).unwrap());
            let expected_total: u128 = (1..=b).map(|j| binomial(n as u64, j as u64).unwrap()).sum();
            assert_eq!(t.component_count() as u128, expected_total);
        }
    }

    #[test]
    fn m_neighborhood_models() {
        let g = path(4).unwrap();
        let t = TransitionGraph::m_neighborhood(&g, 2, 0.2).unwrap();
        assert_eq!(t.out_neighbors(0), &[1, 2]);
        let d = TransitionGraph::drifting(&g, 0.2).unwrap();
        let m1 = TransitionGraph::m_neighborhood(&g, 1, 0.2).unwrap();
        for u in 0..4 {
            assert_eq!(d.out_neighbors(u), m1.out_neighbors(u));
        }
        let k = clique(5).unwrap();
        let t = TransitionGraph::m_neighborhood(&k, 3, 0.2).unwrap();
        assert_eq!(t.max_out_degree(), 4);
        assert!(TransitionGraph::m_neighborhood(&g, 0, 0.2).is_err());
    }

    #[test]
    fn complete_models() {
        let t = TransitionGraph::complete(3, 0.5).unwrap();
        assert!((t.arc_prob(0) - 0.25).abs() < 1e-15);
        assert_eq!(t.max_out_degree(), 2);
        let t = TransitionGraph::complete(3, 0.0).unwrap();
        assert_eq!(t.self_prob(1), 1.0);
        let t = TransitionGraph::complete(1, 0.7).unwrap();
        assert_eq!(t.arcs(0).collect::<Vec<_>>(), vec![(0, 1.0)]);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(TransitionGraph::complete(3, 1.5).is_err());
        assert!(TransitionGraph::complete(3, -0.1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(10, 0), Some(1));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
    }
}
