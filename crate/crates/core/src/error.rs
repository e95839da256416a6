use thiserror::Error;

/// Errors raised by the construction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("graph is invalid: {0}")]
    InvalidGraph(String),

    #[error("positivity is undefined for signed plumbing graphs (edge {0} has sign -1)")]
    SignedGraph(usize),

    #[error("graph is not positive: vertex `{vertex}` has m + d = {margin}")]
    NotPositive { vertex: String, margin: i64 },

    #[error("unknown curve `{0}`")]
    UnknownCurve(String),

    #[error("binding `{0}` belongs to an auxiliary vertex and cannot be capped")]
    AuxiliaryCap(String),

    #[error("tree oracle undefined: graph has a cycle")]
    OracleUndefined,

    #[error("framing audit failed at vertex `{vertex}`: got {got}, expected m = {expected}")]
    AuditMismatch {
        vertex: String,
        got: i64,
        expected: i64,
    },

    #[error("surface component {0} has no boundary")]
    ClosedComponent(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
