//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a tournament: {0}")]
    NotTournament(String),

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("sequence is not a permutation of the vertex set")]
    NotPermutation,

    #[error("instance size {n} exceeds the documented cap {cap} for this operation")]
    SizeLimitExceeded { n: usize, cap: usize },

    #[error("pair ({u}, {v}) is not an edge of the tournament")]
    NotAnEdge { u: usize, v: usize },

    #[error("vertex set is empty")]
    EmptySet,

    #[error("vertex sets overlap")]
    Overlap,

    #[error("ordering violates (P2): vertex {vertex} has {count} {side}-neighbours")]
    P2ViolatedInput { vertex: usize, count: usize, side: &'static str },

    #[error("ordering is not a paving ordering")]
    NotPavingOrdering,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("tournament contains Delta(1,2,2): x={x}, Y={{{y0},{y1}}}, Z={{{z0},{z1}}}")]
    NotFree { x: usize, y0: usize, y1: usize, z0: usize, z1: usize },

    #[error("decomposition tree replay failed at step {step}: {message}")]
    ReplayPreconditionFailed { step: usize, message: String },

    #[error("generation exhausted after {attempts} attempts")]
    GenerationExhausted { attempts: usize },

    #[error("normalization failed (bug sentinel): {0}")]
    NotNormalizable(String),

    #[error("internal invariant violated (bug sentinel): {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            message: message.into(),
        }
    }
}
