use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("common neighbourhood of the empty set is not defined")]
    EmptyVertexSet,

    #[error("vertex set is not independent: {u} ~ {v}")]
    NotIndependent { u: usize, v: usize },

    #[error("r must be at least 1 (got {0})")]
    InvalidLevel(u32),

    #[error("multiset is not {r}-incident")]
    NotIncident { r: u32 },

    #[error("graphs have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error("{what} cap exceeded: {value} > {limit}")]
    CapExceeded { what: &'static str, value: u64, limit: u64 },

    #[error("invalid move #{index}: {reason}")]
    InvalidMove { index: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap(what: &'static str, value: impl TryInto<u64>, limit: impl TryInto<u64>) -> Error {
    Error::CapExceeded {
        what,
        value: value.try_into().unwrap_or(u64::MAX),
        limit: limit.try_into().unwrap_or(u64::MAX),
    }
}
