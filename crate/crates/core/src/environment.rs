//! Ground truth for a simulated run: where the target is each round and what
//! the (noisy, adversarial) user answers to a query.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_noise, Error, Result};
use crate::graph::{families, FeedbackGraph};
use crate::transition::TransitionGraph;

/// The rng used for every simulation stream.
pub type SimRng = ChaCha8Rng;

/// SplitMix64 finalizer applied to `seed ^ (index * 0x9E3779B97F4A7C15)`.
///
/// Used to derive independent per-trial (and per-grid-point) seeds from one
/// master seed, so a trial's stream depends only on its index and never on
/// execution order.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, index: u64) -> SimRng {
    SimRng::seed_from_u64(mix_seed(seed, index))
}

/// Which rounds the target attempts a move in.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    /// Exactly `B` distinct rounds, uniformly without replacement.
    UniformRounds,
    /// Each round independently with probability `B / R`, stopping after `B`.
    Bernoulli,
    /// An explicit list of 1-based rounds.
    Fixed(Vec<usize>),
}

/// Order of events inside a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EventOrder {
    /// Target moves, then the learner queries and gets feedback.
    #[default]
    MoveFirst,
    /// Learner queries and gets feedback, then the target moves.
    QueryFirst,
}

/// Target positions (vertices of the transition graph) at query time.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    start: usize,
    targets: Vec<usize>,
    move_rounds: Vec<usize>,
    budget: usize,
}

impl Trajectory {
    /// Position before round 1.
    pub fn start(&self) -> usize {
        self.start
    }

    /// Target at each round's query (index `r - 1` for round `r`).
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// 1-based rounds whose target differs from the previous position.
    pub fn move_rounds(&self) -> &[usize] {
        &self.move_rounds
    }

    pub fn rounds(&self) -> usize {
        self.targets.len()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn base_targets(&self, g_prime: &TransitionGraph) -> Vec<usize> {
        self.targets.iter().map(|&u| g_prime.base_of(u)).collect()
    }

    /// Checks the move budget and that every move follows an arc.
    pub fn validate(&self, g_prime: &TransitionGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSchedule(msg));
        if self.start >= g_prime.dup_count() {
            return bad(format!("start vertex {} out of range", self.start));
        }
        if self.move_rounds.len() > self.budget {
            return bad(format!(
                "{} moves exceed budget {}",
                self.move_rounds.len(),
                self.budget
            ));
        }
        let mut prev = self.start;
        let mut moves = 0;
        for &t in &self.targets {
            if t != prev {
                if !g_prime.out_neighbors(prev).contains(&t) {
                    return bad(format!("illegal move {prev} -> {t}"));
                }
                moves += 1;
            }
            prev = t;
        }
        if moves != self.move_rounds.len() {
            return bad("move_rounds does not match the target sequence".into());
        }
        Ok(())
    }
}

fn move_round_set(
    rounds: usize,
    budget: usize,
    schedule: &Schedule,
    rng: &mut SimRng,
) -> Result<Vec<bool>> {
    let mut attempt = vec![false; rounds + 1];
    match schedule {
        Schedule::UniformRounds => {
            for i in sample(rng, rounds, budget.min(rounds)).into_iter() {
                attempt[i + 1] = true;
            }
        }
        Schedule::Bernoulli => {
            let b = if rounds == 0 {
                0.0
            } else {
                budget as f64 / rounds as f64
            };
            let mut used = 0;
            for slot in attempt.iter_mut().skip(1) {
                let coin = rng.gen::<f64>() < b;
                if coin && used < budget {
                    *slot = true;
                    used += 1;
                }
            }
        }
        Schedule::Fixed(list) => {
            if list.len() > budget {
                return Err(Error::InvalidSchedule(format!(
                    "{} fixed moves exceed budget {budget}",
                    list.len()
                )));
            }
            for &r in list {
                if r == 0 || r > rounds {
                    return Err(Error::InvalidSchedule(format!(
                        "round {r} outside 1..={rounds}"
                    )));
                }
                if attempt[r] {
                    return Err(Error::InvalidSchedule(format!("round {r} listed twice")));
                }
                attempt[r] = true;
            }
        }
    }
    Ok(attempt)
}

/// Draws a start uniformly from `V'` and then moves along uniformly chosen
/// out-arcs in the scheduled rounds. A scheduled move from a vertex without
/// out-arcs is skipped.
pub fn generate_trajectory(
    g_prime: &TransitionGraph,
    rounds: usize,
    budget: usize,
    schedule: &Schedule,
    order: EventOrder,
    rng: &mut SimRng,
) -> Result<Trajectory> {
    if budget > rounds {
        return Err(Error::InvalidSchedule(format!(
            "budget {budget} exceeds round count {rounds}"
        )));
    }
    let start = rng.gen_range(0..g_prime.dup_count());
    let attempt = move_round_set(rounds, budget, schedule, rng)?;

    let step = |at: usize, rng: &mut SimRng| -> usize {
        let out = g_prime.out_neighbors(at);
        if out.is_empty() {
            at
        } else {
            out[rng.gen_range(0..out.len())]
        }
    };

    let mut targets = Vec::with_capacity(rounds);
    let mut move_rounds = Vec::new();
    let mut cur = start;
    for r in 1..=rounds {
        let prev = cur;
        match order {
            EventOrder::MoveFirst => {
                if attempt[r] {
                    cur = step(cur, rng);
                }
                targets.push(cur);
            }
            EventOrder::QueryFirst => {
                if r > 1 && attempt[r - 1] {
                    cur = step(cur, rng);
                }
                targets.push(cur);
            }
        }
        if cur != prev {
            move_rounds.push(r);
        }
    }
    Ok(Trajectory {
        start,
        targets,
        move_rounds,
        budget,
    })
}

/// How the adversary picks among admissible answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdversaryPolicy {
    /// The answer farthest from the target (smallest id on ties).
    #[default]
    DistanceMax,
    /// Uniform over the admissible answers.
    Random,
    /// The answer whose version space keeps the most learner likelihood.
    LikelihoodGreedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeedbackEvent {
    pub round: usize,
    pub query: usize,
    pub target: usize,
    pub feedback: usize,
    pub noisy: bool,
}

fn pick(
    g: &FeedbackGraph,
    q: usize,
    target: usize,
    candidates: &[usize],
    policy: AdversaryPolicy,
    likelihood: Option<&[f64]>,
    rng: &mut SimRng,
    mask: &mut Vec<bool>,
) -> usize {
    debug_assert!(!candidates.is_empty());
    match policy {
        AdversaryPolicy::DistanceMax => {
            let mut best = candidates[0];
            for &z in &candidates[1..] {
                if g.dist(z, target) > g.dist(best, target) {
                    best = z;
                }
            }
            best
        }
        AdversaryPolicy::Random => candidates[rng.gen_range(0..candidates.len())],
        AdversaryPolicy::LikelihoodGreedy => {
            let mut best = candidates[0];
            let mut best_mass = f64::NEG_INFINITY;
            for &z in candidates {
                g.version_space_mask(q, z, mask)
                    .expect("candidates are neighbors of q");
                let mass: f64 = mask
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m)
                    .map(|(v, _)| likelihood.map_or(1.0, |l| l[v]))
                    .sum();
                if mass > best_mass {
                    best = z;
                    best_mass = mass;
                }
            }
            best
        }
    }
}

/// Answers query `q` when the target sits at base vertex `t`.
///
/// With probability `1 - p` the answer is correct: `q` itself when `q == t`,
/// otherwise a neighbor on a shortest path to `t`. Otherwise the answer is a
/// policy-chosen wrong neighbor (any neighbor if every neighbor is correct).
/// `likelihood` is the learner's base-vertex likelihood, consulted only by
/// [`AdversaryPolicy::LikelihoodGreedy`]; `None` means uniform.
#[allow(clippy::too_many_arguments)]
pub fn feedback(
    g: &FeedbackGraph,
    q: usize,
    t: usize,
    p: f64,
    policy: AdversaryPolicy,
    likelihood: Option<&[f64]>,
    round: usize,
    rng: &mut SimRng,
) -> Result<FeedbackEvent> {
    check_noise(p)?;
    g.check_vertex(q)?;
    g.check_vertex(t)?;
    let noisy = rng.gen::<f64>() < p;
    let mut mask = Vec::new();
    let event = |z| FeedbackEvent {
        round,
        query: q,
        target: t,
        feedback: z,
        noisy,
    };

    if !noisy {
        if q == t {
            return Ok(event(q));
        }
        let valid: Vec<usize> = g
            .neighbor_ids(q)
            .filter(|&z| g.on_shortest_path(q, z, t))
            .collect();
        let z = pick(g, q, t, &valid, policy, likelihood, rng, &mut mask);
        return Ok(event(z));
    }

    if g.degree(q) == 0 {
        return Err(Error::IsolatedVertex(q));
    }
    let wrong: Vec<usize> = g
        .neighbor_ids(q)
        .filter(|&z| q == t || !g.on_shortest_path(q, z, t))
        .collect();
    let candidates = if wrong.is_empty() {
        g.neighbor_ids(q).collect()
    } else {
        wrong
    };
    let z = pick(g, q, t, &candidates, policy, likelihood, rng, &mut mask);
    Ok(event(z))
}

/// The path instance used to embed noisy binary search over `n^R` items:
/// item `x` is the length-`R` base-`n` digit sequence of `x`, most
/// significant digit first, and digit `r` is the target in round `r`.
#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub graph: FeedbackGraph,
    base: u128,
    rounds: usize,
    items: u128,
}

impl LowerBoundInstance {
    pub fn new(n: usize, rounds: usize) -> Result<Self> {
        if n < 2 || rounds < 1 {
            return Err(Error::InvalidParameter {
                name: "n, R",
                value: n.min(rounds) as f64,
                reason: "need n >= 2 and R >= 1",
            });
        }
        let items = u32::try_from(rounds)
            .ok()
            .and_then(|r| (n as u128).checked_pow(r))
            .ok_or_else(|| Error::Overflow(format!("{n}^{rounds} items")))?;
        Ok(LowerBoundInstance {
            graph: families::path(n)?,
            base: n as u128,
            rounds,
            items,
        })
    }

    /// `n^R`.
    pub fn item_count(&self) -> u128 {
        self.items
    }

    pub fn encode(&self, item: u128) -> Result<Vec<usize>> {
        if item >= self.items {
            return Err(Error::Overflow(format!(
                "item {item} outside 0..{}",
                self.items
            )));
        }
        let mut digits = vec![0; self.rounds];
        let mut rest = item;
        for d in digits.iter_mut().rev() {
            *d = (rest % self.base) as usize;
            rest /= self.base;
        }
        Ok(digits)
    }

    pub fn decode(&self, digits: &[usize]) -> Result<u128> {
        if digits.len() != self.rounds {
            return Err(Error::InvalidParameter {
                name: "digits",
                value: digits.len() as f64,
                reason: "need exactly R digits",
            });
        }
        let mut acc: u128 = 0;
        for &d in digits {
            if d as u128 >= self.base {
                return Err(Error::VertexOutOfRange {
                    vertex: d,
                    n: self.base as usize,
                });
            }
            acc = acc * self.base + d as u128;
        }
        Ok(acc)
    }
}
