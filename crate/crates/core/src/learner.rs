//! The two learners and the round loop that pits them against an environment.
//!
//! * The multiplicative-weights learner keeps a likelihood per vertex of the
//!   transition graph, queries the weighted median of the aggregated
//!   likelihood, reweights by consistency with the answer (`1 - p` inside the
//!   version space, `p` outside) and pushes the result one step through the
//!   transition kernel.
//! * The follow-the-feedback learner starts at the graph center and always
//!   queries the previous answer.

use serde::Serialize;

use crate::environment::{
    feedback, generate_trajectory, rng_for, AdversaryPolicy, EventOrder, Schedule,
};
use crate::error::{Error, Result};
use crate::graph::FeedbackGraph;
use crate::transition::TransitionGraph;

/// Likelihoods over the duplicated vertices `V'`, kept normalized.
#[derive(Debug, Clone)]
pub struct LikelihoodState {
    dup: Vec<f64>,
    round: usize,
    next: Vec<f64>,
    mask: Vec<bool>,
}

impl LikelihoodState {
    /// Uniform over `V'`, round 1.
    pub fn uniform(g_prime: &TransitionGraph) -> Self {
        let n = g_prime.dup_count();
        LikelihoodState {
            dup: vec![1.0 / n as f64; n],
            round: 1,
            next: vec![0.0; n],
            mask: Vec::new(),
        }
    }

    pub fn likelihoods(&self) -> &[f64] {
        &self.dup
    }

    pub fn round(&self) -> usize {
        self.round
    }

    /// Replaces the likelihoods (normalizing them); used to start from a
    /// non-uniform prior.
    pub fn set_likelihoods(&mut self, values: Vec<f64>) -> Result<()> {
        let total: f64 = values.iter().sum();
        if values.len() != self.dup.len()
            || values.iter().any(|x| !(x.is_finite() && *x >= 0.0))
            || total <= 0.0
        {
            return Err(Error::InvalidParameter {
                name: "likelihood",
                value: total,
                reason: "need one finite non-negative entry per duplicated vertex, not all zero",
            });
        }
        self.dup = values.into_iter().map(|x| x / total).collect();
        Ok(())
    }

    /// Sums duplicate likelihoods onto their base vertices.
    pub fn aggregate(&self, g_prime: &TransitionGraph) -> Vec<f64> {
        let mut agg = vec![0.0; g_prime.base_count()];
        for (u, &l) in self.dup.iter().enumerate() {
            agg[g_prime.base_of(u)] += l;
        }
        agg
    }

    /// The weighted median of the aggregated likelihood.
    pub fn query(&self, g: &FeedbackGraph, g_prime: &TransitionGraph) -> usize {
        g.weighted_median_of(&self.aggregate(g_prime))
    }

    /// Reweights by consistency with answer `z` to query `q`, applies one
    /// transition step and renormalizes.
    pub fn update(
        &mut self,
        g: &FeedbackGraph,
        g_prime: &TransitionGraph,
        q: usize,
        z: usize,
        p: f64,
    ) -> Result<()> {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "learner noise rate must lie in [0, 1/2]",
            });
        }
        g.version_space_mask(q, z, &mut self.mask)?;
        self.next.fill(0.0);
        for u in 0..self.dup.len() {
            let consistent = self.mask[g_prime.base_of(u)];
            let w = self.dup[u] * if consistent { 1.0 - p } else { p };
            if w == 0.0 {
                continue;
            }
            self.next[u] += g_prime.self_prob(u) * w;
            let share = g_prime.arc_prob(u) * w;
            for &v in g_prime.out_neighbors(u) {
                self.next[v] += share;
            }
        }
        let total: f64 = self.next.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::DegenerateState { round: self.round });
        }
        for x in &mut self.next {
            *x /= total;
        }
        std::mem::swap(&mut self.dup, &mut self.next);
        self.round += 1;
        Ok(())
    }
}

pub fn mwu_init(g_prime: &TransitionGraph) -> LikelihoodState {
    LikelihoodState::uniform(g_prime)
}

/// Vertex minimizing the total distance to all others.
pub fn follow_feedback_init(g: &FeedbackGraph) -> usize {
    g.center()
}

/// The next query is the last answer.
pub fn follow_feedback_step(z: usize) -> usize {
    z
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnerKind {
    Mwu,
    Follow,
}

/// Everything a single run needs besides the two graphs and the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunParams {
    pub learner: LearnerKind,
    pub rounds: usize,
    pub budget: usize,
    /// Noise rate of the environment.
    pub p: f64,
    /// Noise rate handed to the learner; `None` means the true `p`.
    pub learner_p: Option<f64>,
    pub policy: AdversaryPolicy,
    pub schedule: Schedule,
    pub order: EventOrder,
}

impl RunParams {
    pub fn new(learner: LearnerKind, rounds: usize, budget: usize, p: f64) -> Self {
        RunParams {
            learner,
            rounds,
            budget,
            p,
            learner_p: None,
            policy: AdversaryPolicy::DistanceMax,
            schedule: Schedule::UniformRounds,
            order: EventOrder::MoveFirst,
        }
    }

    pub fn policy(mut self, policy: AdversaryPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn order(mut self, order: EventOrder) -> Self {
        self.order = order;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundRecord {
    pub query: usize,
    pub target: usize,
    pub feedback: usize,
    pub mistake: bool,
    pub noisy: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub params: RunParams,
    pub seed: u64,
    pub rounds: Vec<RoundRecord>,
    pub total_mistakes: usize,
    pub moves: usize,
}

/// Plays `params.rounds` rounds. The trajectory is drawn from stream
/// `(seed, 0)` and the feedback coins from stream `(seed, 1)`.
pub fn run(
    g: &FeedbackGraph,
    g_prime: &TransitionGraph,
    params: &RunParams,
    seed: u64,
) -> Result<RunRecord> {
    if g_prime.base_count() != g.vertex_count() {
        return Err(Error::InvalidParameter {
            name: "transition graph",
            value: g_prime.base_count() as f64,
            reason: "base vertex count differs from the feedback graph",
        });
    }
    let mut traj_rng = rng_for(seed, 0);
    let mut fb_rng = rng_for(seed, 1);
    let trajectory = generate_trajectory(
        g_prime,
        params.rounds,
        params.budget,
        &params.schedule,
        params.order,
        &mut traj_rng,
    )?;
    let learner_p = params.learner_p.unwrap_or(params.p);

    let mut rounds = Vec::with_capacity(params.rounds);
    let mut mwu = match params.learner {
        LearnerKind::Mwu => Some(mwu_init(g_prime)),
        LearnerKind::Follow => None,
    };
    let mut next_query = follow_feedback_init(g);

    for (idx, &dup_target) in trajectory.targets().iter().enumerate() {
        let target = g_prime.base_of(dup_target);
        let (query, agg) = match &mwu {
            Some(state) => {
                let agg = state.aggregate(g_prime);
                (g.weighted_median_of(&agg), Some(agg))
            }
            None => (next_query, None),
        };
        let event = feedback(
            g,
            query,
            target,
            params.p,
            params.policy,
            agg.as_deref(),
            idx + 1,
            &mut fb_rng,
        )?;
        match &mut mwu {
            Some(state) => state.update(g, g_prime, query, event.feedback, learner_p)?,
            None => next_query = follow_feedback_step(event.feedback),
        }
        rounds.push(RoundRecord {
            query,
            target,
            feedback: event.feedback,
            mistake: query != target,
            noisy: event.noisy,
        });
    }
    let total_mistakes = rounds.iter().filter(|r| r.mistake).count();
    Ok(RunRecord {
        params: params.clone(),
        seed,
        rounds,
        total_mistakes,
        moves: trajectory.move_rounds().len(),
    })
}
