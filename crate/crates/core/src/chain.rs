//! Finite Markov chains that model the follow-the-feedback learner.
//!
//! Each chain tracks the learner's *distance* to the target rather than its
//! position. The clique, star and quasi-star chains count distance upward
//! (state 0 = on target). The walk chain counts the other way: state 0 is the
//! far end and state `d` is the target.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::environment::SimRng;
use crate::error::{check_probability, Error, Result};
use crate::fmt::{csv_table, sig};

/// Tolerance on row sums.
pub const ROW_SUM_TOL: f64 = 1e-12;
/// Chains larger than this are solved by power iteration.
pub const DIRECT_SOLVE_LIMIT: usize = 2000;
pub const POWER_TOL: f64 = 1e-12;
pub const POWER_MAX_ITERS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain {
    size: usize,
    /// Row-major transition matrix.
    p: Vec<f64>,
    labels: Vec<String>,
}

impl MarkovChain {
    /// Validates entries in `[0, 1]` and unit row sums.
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || labels.len() != size {
            return Err(Error::InvalidParameter {
                name: "chain",
                value: size as f64,
                reason: "need a non-empty square matrix with one label per state",
            });
        }
        let mut p = Vec::with_capacity(size * size);
        for row in &rows {
            if row.len() != size {
                return Err(Error::InvalidParameter {
                    name: "chain",
                    value: row.len() as f64,
                    reason: "matrix is not square",
                });
            }
            if let Some(&x) = row.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(Error::InvalidParameter {
                    name: "transition probability",
                    value: x,
                    reason: "entries must lie in [0, 1]",
                });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidParameter {
                    name: "row sum",
                    value: sum,
                    reason: "rows must sum to 1",
                });
            }
            p.extend_from_slice(row);
        }
        Ok(MarkovChain { size, p, labels })
    }

    fn with_numeric_labels(rows: Vec<Vec<f64>>, describe: &str) -> Result<Self> {
        let labels = (0..rows.len())
            .map(|i| format!("{describe} {i}"))
            .collect();
        Self::new(rows, labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.p[i * self.size..(i + 1) * self.size]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn check_state(&self, s: usize) -> Result<()> {
        if s >= self.size {
            return Err(Error::VertexOutOfRange {
                vertex: s,
                n: self.size,
            });
        }
        Ok(())
    }

    /// States reachable from `from` along positive-probability steps,
    /// optionally stopping at `stop`.
    fn reachable(&self, from: usize, stop: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(i) = queue.pop_front() {
            if Some(i) == stop {
                continue;
            }
            for (j, s) in seen.iter_mut().enumerate() {
                if !*s && self.prob(i, j) > 0.0 {
                    *s = true;
                    queue.push_back(j);
                }
            }
        }
        seen
    }

    /// Closed communicating classes, each as a sorted state list.
    pub fn closed_classes(&self) -> Vec<Vec<usize>> {
        let reach: Vec<Vec<bool>> = (0..self.size).map(|i| self.reachable(i, None)).collect();
        let mut assigned = vec![false; self.size];
        let mut classes = Vec::new();
        for i in 0..self.size {
            if assigned[i] {
                continue;
            }
            let class: Vec<usize> = (0..self.size)
                .filter(|&j| reach[i][j] && reach[j][i])
                .collect();
            for &j in &class {
                assigned[j] = true;
            }
            let closed = class
                .iter()
                .all(|&a| (0..self.size).all(|b| !reach[a][b] || reach[b][a]));
            if closed {
                classes.push(class);
            }
        }
        classes
    }

    /// One step of `x <- x P`.
    pub fn step_distribution(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.size];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (o, &pij) in out.iter_mut().zip(self.row(i)) {
                *o += xi * pij;
            }
        }
        out
    }

    /// `max_j |(pi P)_j - pi_j|`.
    pub fn stationary_residual(&self, pi: &[f64]) -> f64 {
        self.step_distribution(pi)
            .iter()
            .zip(pi)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Samples the successor of state `i`.
    pub fn sample_next(&self, i: usize, rng: &mut SimRng) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let row = self.row(i);
        for (j, &pij) in row.iter().enumerate() {
            acc += pij;
            if u < acc {
                return j;
            }
        }
        // rounding: fall back to the last state with positive mass
        row.iter().rposition(|&x| x > 0.0).unwrap_or(i)
    }

    /// CSV with header `state,0,1,...` and one row per state.
    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<f64>> = (0..self.size).map(|i| self.row(i).to_vec()).collect();
        matrix_csv(&rows)
    }
}

/// Row-major matrix as CSV with header `state,0,1,...`.
pub fn matrix_csv(rows: &[Vec<f64>]) -> String {
    let mut header = vec!["state".to_string()];
    header.extend((0..rows.len()).map(|j| j.to_string()));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_table(
        &header,
        rows.iter().enumerate().map(|(i, row)| {
            std::iter::once(i.to_string()).chain(row.iter().map(|&x| sig(x)))
        }),
    )
}

/// Two states, both rows `((1-p)(1-b), p + b - pb)`.
pub fn clique_chain(p: f64, b: f64) -> Result<MarkovChain> {
    check_probability("p", p)?;
    check_probability("b", b)?;
    let stay = (1.0 - p) * (1.0 - b);
    let row = vec![stay, 1.0 - stay];
    MarkovChain::with_numeric_labels(vec![row.clone(), row], "distance")
}

/// Three distance states on a star with the target moving among leaves.
pub fn star_chain(p: f64, b: f64) -> Result<MarkovChain> {
    check_probability("p", p)?;
    check_probability("b", b)?;
    let q = 1.0 - p;
    let hit = q * (1.0 - b);
    let rows = vec![
        vec![hit, p, q * b],
        vec![hit, 0.0, p + b - p * b],
        vec![0.0, q, p],
    ];
    MarkovChain::with_numeric_labels(rows, "distance")
}

/// `(d+1)`-state distance chain for a quasi-star of diameter `d`.
///
/// Row `i` puts `(1-p)(1-b)` on `i-1`, `p(1-b)` on `i+1` and zero on `i-2`
/// and `i`; state 0 instead keeps `(1-p)(1-b)` on itself. Whatever mass is
/// left is spread evenly over the columns no rule touched.
pub fn quasi_star_chain(d: usize, p: f64, b: f64) -> Result<MarkovChain> {
    if d < 4 || !d.is_multiple_of(2) {
        return Err(Error::InvalidDiameter(d));
    }
    check_probability("p", p)?;
    check_probability("b", b)?;
    let closer = (1.0 - p) * (1.0 - b);
    let further = p * (1.0 - b);
    let size = d + 1;
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let mut row = vec![0.0; size];
        let mut fixed = vec![false; size];
        let mut set = |j: usize, v: f64, row: &mut Vec<f64>| {
            row[j] = v;
            fixed[j] = true;
        };
        if i >= 2 {
            set(i - 2, 0.0, &mut row);
        }
        if i >= 1 {
            set(i - 1, closer, &mut row);
        }
        set(i, if i == 0 { closer } else { 0.0 }, &mut row);
        if i + 1 < size {
            set(i + 1, further, &mut row);
        }
        let free: Vec<usize> = (0..size).filter(|&j| !fixed[j]).collect();
        let left = 1.0 - row.iter().sum::<f64>();
        for &j in &free {
            row[j] = left / free.len() as f64;
        }
        rows.push(row);
    }
    MarkovChain::with_numeric_labels(rows, "distance")
}

/// Biased walk on `{0..d}`: forward `1 - p`, backward `p`, with self-loops
/// `P[0][0] = p` and `P[d][d] = 1 - p`. State `d` is the target.
pub fn walk_chain(d: usize, p: f64) -> Result<MarkovChain> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: 0.0,
            reason: "walk chain needs d >= 1",
        });
    }
    check_probability("p", p)?;
    let size = d + 1;
    let mut rows = vec![vec![0.0; size]; size];
    for (i, row) in rows.iter_mut().enumerate() {
        if i == 0 {
            row[0] += p;
        } else {
            row[i - 1] += p;
        }
        if i == d {
            row[d] += 1.0 - p;
        } else {
            row[i + 1] += 1.0 - p;
        }
    }
    let labels = (0..size)
        .map(|i| format!("steps from far end {i} (distance {})", d - i))
        .collect();
    MarkovChain::new(rows, labels)
}

/// Stationary distribution of the unique closed class.
///
/// Small chains solve `(P^T - I) pi = 0` with one equation replaced by
/// `sum(pi) = 1` (LU with partial pivoting). Larger chains use power
/// iteration until successive iterates differ by less than [`POWER_TOL`].
pub fn stationary(chain: &MarkovChain) -> Result<Vec<f64>> {
    let classes = chain.closed_classes();
    if classes.len() != 1 {
        return Err(Error::Reducible {
            closed_classes: classes.len(),
        });
    }
    let n = chain.size();
    if n > DIRECT_SOLVE_LIMIT {
        return stationary_power(chain);
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(j, i)] = chain.prob(i, j);
        }
        a[(i, i)] -= 1.0;
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(n);
    rhs[n - 1] = 1.0;
    let pi = a
        .lu()
        .solve(&rhs)
        .ok_or(Error::Reducible { closed_classes: 1 })?;
    Ok(pi.iter().map(|&x| x.max(0.0)).collect())
}

/// Power iteration from the uniform distribution.
pub fn stationary_power(chain: &MarkovChain) -> Result<Vec<f64>> {
    let n = chain.size();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..POWER_MAX_ITERS {
        // lazy step avoids oscillation on periodic chains
        let stepped = chain.step_distribution(&x);
        let next: Vec<f64> = stepped
            .iter()
            .zip(&x)
            .map(|(a, b)| 0.5 * (a + b))
            .collect();
        let diff = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if diff < POWER_TOL {
            let total: f64 = x.iter().sum();
            return Ok(x.into_iter().map(|v| v / total).collect());
        }
    }
    Err(Error::Reducible { closed_classes: 0 })
}

/// Expected number of steps to first reach `to` starting at `from`
/// (0 when they coincide).
pub fn hitting_time(chain: &MarkovChain, from: usize, to: usize) -> Result<f64> {
    chain.check_state(from)?;
    chain.check_state(to)?;
    if from == to {
        return Ok(0.0);
    }
    // states visited before absorption at `to`
    let visited = chain.reachable(from, Some(to));
    if !visited[to] {
        return Err(Error::Unreachable { from, to });
    }
    let transient: Vec<usize> = (0..chain.size())
        .filter(|&i| visited[i] && i != to)
        .collect();
    for &i in &transient {
        if !chain.reachable(i, None)[to] {
            return Err(Error::Unreachable { from, to });
        }
    }
    let mut index = vec![usize::MAX; chain.size()];
    for (k, &i) in transient.iter().enumerate() {
        index[i] = k;
    }
    let m = transient.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    for (k, &i) in transient.iter().enumerate() {
        for (l, &j) in transient.iter().enumerate() {
            a[(k, l)] -= chain.prob(i, j);
        }
    }
    let rhs = DVector::<f64>::from_element(m, 1.0);
    let h = a
        .lu()
        .solve(&rhs)
        .ok_or(Error::Unreachable { from, to })?;
    Ok(h[index[from]])
}

/// `R * (1 - pi[correct_state])`.
pub fn expected_mistakes(chain: &MarkovChain, rounds: usize, correct_state: usize) -> Result<f64> {
    chain.check_state(correct_state)?;
    let pi = stationary(chain)?;
    Ok(rounds as f64 * (1.0 - pi[correct_state]))
}

/// Sum of the one-step recurrence `h(i, i+1) = (1 + p h(i-1, i)) / (1 - p)`,
/// `h(0, 1) = 1 / (1 - p)`, for the walk chain.
pub fn walk_hitting_recurrence(d: usize, p: f64) -> f64 {
    let mut step = 1.0 / (1.0 - p);
    let mut total = step;
    for _ in 1..d {
        step = (1.0 + p * step) / (1.0 - p);
        total += step;
    }
    total
}

/// Exact walk-chain hitting time `h(0, d)` in closed form:
/// `d / (1 - 2p) - p (1 - r^d) / (1 - 2p)^2` with `r = p / (1 - p)`.
pub fn walk_hitting_closed_form(d: usize, p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidNoise(p));
    }
    let r = p / (1.0 - p);
    let s = 1.0 - 2.0 * p;
    Ok(d as f64 / s - p * (1.0 - r.powi(d as i32)) / (s * s))
}

/// Long-run fraction of time the walk spends off the target state `d`:
/// `1 - (1 - r) / (1 - r^(d+1))`.
pub fn walk_off_target_fraction(d: usize, p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidNoise(p));
    }
    let r = p / (1.0 - p);
    Ok(1.0 - (1.0 - r) / (1.0 - r.powi(d as i32 + 1)))
}

/// Monte Carlo estimate of `R (1 - pi[correct])`: mean and standard error of
/// the number of steps spent outside `correct` over `trials` runs of length
/// `rounds`, each started at `start`.
pub fn simulate_mistakes(
    chain: &MarkovChain,
    rounds: usize,
    correct_state: usize,
    start: usize,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    chain.check_state(start)?;
    chain.check_state(correct_state)?;
    let counts: Vec<f64> = (0..trials)
        .map(|t| {
            let mut rng = crate::environment::rng_for(seed, t as u64);
            let mut state = start;
            let mut off = 0usize;
            for _ in 0..rounds {
                if state != correct_state {
                    off += 1;
                }
                state = chain.sample_next(state, &mut rng);
            }
            off as f64
        })
        .collect();
    Ok(crate::stats::mean_and_stderr(&counts))
}
