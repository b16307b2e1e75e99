use thiserror::Error;

/// Everything that can go wrong while building instances, simulating or
/// analysing them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph is not connected: vertex {to} unreachable from vertex {from}")]
    DisconnectedGraph { from: usize, to: usize },

    #[error("invalid edge ({u}, {v}, {w}): {reason}")]
    InvalidEdge {
        u: usize,
        v: usize,
        w: f64,
        reason: &'static str,
    },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("feedback {z} is neither the query {q} nor one of its neighbors")]
    NotNeighbor { q: usize, z: usize },

    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),

    #[error("{what} would need {requested} elements, limit is {limit}")]
    TooLarge {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid move schedule: {0}")]
    InvalidSchedule(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("likelihood mass underflowed to zero in round {round}")]
    DegenerateState { round: usize },

    #[error("invalid quasi-star diameter {0}: must be even and at least 4")]
    InvalidDiameter(usize),

    #[error("chain has no unique stationary distribution ({closed_classes} closed classes)")]
    Reducible { closed_classes: usize },

    #[error("state {to} is not reached almost surely from state {from}")]
    Unreachable { from: usize, to: usize },

    #[error("noise rate p = {0} makes 1 - H(p) vanish")]
    NoisePoorlyPosed(f64),

    #[error("noise rate p = {0} must be below 1/2 for this formula")]
    InvalidNoise(f64),

    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),

    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code for the command-line front end.
    ///
    /// * 2: invalid configuration or parameters
    /// * 3: unreadable or malformed input files
    /// * 4: invalid graphs
    /// * 5: instances too large to build
    /// * 1: numerical failures during a run or analysis
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. }
            | Error::InvalidParameter { .. }
            | Error::InvalidNoise(_)
            | Error::NoisePoorlyPosed(_)
            | Error::MissingParam(_)
            | Error::InvalidSchedule(_)
            | Error::InvalidDiameter(_) => 2,
            Error::Parse { .. } | Error::Io(_) => 3,
            Error::DisconnectedGraph { .. }
            | Error::InvalidEdge { .. }
            | Error::VertexOutOfRange { .. }
            | Error::IsolatedVertex(_) => 4,
            Error::TooLarge { .. } | Error::Overflow(_) => 5,
            Error::NotNeighbor { .. }
            | Error::DegenerateState { .. }
            | Error::Reducible { .. }
            | Error::Unreachable { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

pub(crate) fn check_noise(value: f64) -> Result<()> {
    if !(0.0..0.5).contains(&value) {
        return Err(Error::InvalidParameter {
            name: "p",
            value,
            reason: "noise rate must lie in [0, 1/2)",
        });
    }
    Ok(())
}
