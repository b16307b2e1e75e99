// mdbook cannot run listings that depend on external crates, so every chapter
// is included here as a module doc and `cargo test --doc` checks the snippets.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/feedback-graphs.md")]
pub mod feedback_graphs {}
#[doc = include_str!("../../book/src/transition-models.md")]
pub mod transition_models {}
#[doc = include_str!("../../book/src/environment.md")]
pub mod environment {}
#[doc = include_str!("../../book/src/learners.md")]
pub mod learners {}
#[doc = include_str!("../../book/src/markov-chains.md")]
pub mod markov_chains {}
#[doc = include_str!("../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../book/src/experiments.md")]
pub mod experiments {}
