use thiserror::Error;

use crate::metric::MetricViolation;

/// Errors produced by the diversity toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("invalid metric: {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidMetric(Vec<MetricViolation>),

    #[error("{what}: {got} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ground set mismatch: {left} vs {right} points")]
    GroundMismatch { left: usize, right: usize },

    #[error("invalid ground set: {0}")]
    InvalidGround(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid symmetric profile: {0}")]
    InvalidProfile(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("hypergraph does not connect all vertices")]
    Disconnected,

    #[error("subset {members:?} cannot be covered by a connected sub-hypergraph")]
    NotCoverable { members: Vec<usize> },

    #[error("ground point {0} has no placement on the tree")]
    Unplaced(usize),

    #[error("distance to the empty set is undefined")]
    EmptyAnchor,

    #[error("not a diversity: value {value} on subset {members:?} of size >= 2")]
    NotADiversity { members: Vec<usize>, value: f64 },

    #[error("tree dominance violated: d_tree({u},{v}) = {tree} < d = {metric}")]
    DominanceViolated {
        u: usize,
        v: usize,
        tree: f64,
        metric: f64,
    },

    #[error("invalid JSON")]
    Json(#[from] serde_json::Error),

    #[error("I/O error")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
