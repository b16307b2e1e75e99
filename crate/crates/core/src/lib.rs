//! Interactive learning of a moving target on a feedback graph.
//!
//! A learner queries vertices of a graph `G`; the environment answers with
//! the queried vertex if it is the target, otherwise with a neighbor on a
//! shortest path towards the target. Each answer is flipped to a wrong
//! neighbor with probability `p`, and the target may move up to `B` times in
//! `R` rounds along the arcs of a transition graph `G'`.
//!
//! The crate provides:
//!
//! * [`graph`]: feedback graphs, distances, version spaces and weighted medians.
//! * [`transition`]: the transition graphs for the target evolution models.
//! * [`environment`]: target trajectories, noisy feedback and seeded RNG streams.
//! * [`learner`]: the multiplicative-weights learner and follow-the-feedback.
//! * [`chain`]: Markov-chain views of follow-the-feedback.
//! * [`bounds`]: closed-form mistake bounds.
//! * [`experiment`]: configuration, trials, sweeps and CSV/JSON output.
//!
//! ```
//! use interlearn::graph::families;
//! use interlearn::learner::{run, LearnerKind, RunParams};
//! use interlearn::transition::TransitionGraph;
//!
//! let g = families::path(9).unwrap();
//! let tg = TransitionGraph::drifting(&g, 0.0).unwrap();
//! let params = RunParams::new(LearnerKind::Mwu, 50, 0, 0.0);
//! let record = run(&g, &tg, &params, 7).unwrap();
//! // A static target on a path of 9 vertices is found by binary search.
//! assert!(record.total_mistakes <= 4);
//! ```

pub mod bounds;
pub mod chain;
pub mod edgelist;
pub mod environment;
pub mod error;
pub mod experiment;
pub mod fmt;
pub mod graph;
pub mod learner;
pub mod stats;
pub mod transition;

pub use error::{Error, Result};
pub use graph::{FeedbackGraph, LikelihoodVector};
pub use transition::TransitionGraph;
