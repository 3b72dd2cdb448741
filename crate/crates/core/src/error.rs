use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("edge list {0} contains no nodes")]
    NoNodes(PathBuf),

    #[error("duplicate edge ({src}, {dst})")]
    DuplicateEdge { src: usize, dst: usize },

    #[error("node id {id} out of range for {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("{field} has length {got}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear solve did not converge after {iterations} iterations (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("singular system (I - w)")]
    Singular,

    #[error(
        "simplex gave up after {pivots} pivots (smallest pivot {min_pivot:e}, payoff range {payoff_range:e})"
    )]
    Simplex {
        pivots: usize,
        min_pivot: f64,
        payoff_range: f64,
    },

    #[error("{n} nodes exceeds the node cap of {cap} for the two-camp game")]
    TooManyNodes { n: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
