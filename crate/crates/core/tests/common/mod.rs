#![allow(dead_code)]

use interlearn::graph::{Edge, FeedbackGraph};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected undirected graph: a random tree plus `extra` random edges, with
/// weights drawn from `weights`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize, weights: &[f64]) -> FeedbackGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(Edge::new(u, v, weights[rng.gen_range(0..weights.len())]));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push(Edge::new(u, v, weights[rng.gen_range(0..weights.len())]));
        }
    }
    FeedbackGraph::new(n, edges, false).unwrap()
}

/// Floyd-Warshall over the graph's edge list.
pub fn floyd(g: &FeedbackGraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.w);
        if !g.is_directed() {
            d[e.v][e.u] = d[e.v][e.u].min(e.w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Adjacency as `(neighbor, weight)` lists, lightest parallel edge kept.
pub fn adjacency(g: &FeedbackGraph) -> Vec<Vec<(usize, f64)>> {
    let n = g.vertex_count();
    let mut w = vec![vec![f64::INFINITY; n]; n];
    for e in g.edges() {
        w[e.u][e.v] = w[e.u][e.v].min(e.w);
        if !g.is_directed() {
            w[e.v][e.u] = w[e.v][e.u].min(e.w);
        }
    }
    w.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, x)| x.is_finite())
                .map(|(j, &x)| (j, x))
                .collect()
        })
        .collect()
}

/// Every simple path from `from` to `to` whose length equals `target_len`.
pub fn shortest_paths(
    adj: &[Vec<(usize, f64)>],
    from: usize,
    to: usize,
    target_len: f64,
) -> Vec<Vec<usize>> {
    fn go(
        adj: &[Vec<(usize, f64)>],
        path: &mut Vec<usize>,
        len: f64,
        to: usize,
        target: f64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        if last == to {
            if (len - target).abs() <= 1e-9 {
                out.push(path.clone());
            }
            return;
        }
        for &(w, c) in &adj[last] {
            if path.contains(&w) || len + c > target + 1e-9 {
                continue;
            }
            path.push(w);
            go(adj, path, len + c, to, target, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(adj, &mut vec![from], 0.0, to, target_len, &mut out);
    out
}

/// Brute-force version space: `v` is kept when some shortest `q -> v` path
/// passes through `z` (`S(q, q) = {q}`).
pub fn brute_version_space(g: &FeedbackGraph, q: usize, z: usize) -> Vec<usize> {
    if q == z {
        return vec![q];
    }
    let dist = floyd(g);
    let adj = adjacency(g);
    (0..g.vertex_count())
        .filter(|&v| {
            v != q
                && shortest_paths(&adj, q, v, dist[q][v])
                    .iter()
                    .any(|p| p.contains(&z))
        })
        .collect()
}
