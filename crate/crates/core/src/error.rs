use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{0}` is listed twice")]
    DuplicateNode(String),
    #[error("duplicate edge ({tail}, {head}, {index})")]
    DuplicateEdge { tail: String, head: String, index: u32 },
    #[error("graph has a cycle through edge {edge} ({tail} -> {head})")]
    CycleDetected { edge: EdgeId, tail: String, head: String },
    #[error("source of session {session} has an incoming edge")]
    SourceHasInEdge { session: usize },
    #[error("sink of session {session} has an outgoing edge")]
    SinkHasOutEdge { session: usize },
    #[error("session {session} has the same source and sink")]
    DegenerateSession { session: usize },
    #[error("session {0} does not exist")]
    UnknownSession(usize),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edge set is not a minimum cut-set between the given nodes")]
    CutNotSaturable,
    #[error("permutation for rank {rank} does not order its cut-set")]
    PermutationMismatch { rank: usize },
    #[error("path {path} of rank {rank} violates the path/cut bijection: {reason}")]
    BijectionViolated { rank: usize, path: usize, reason: String },
    #[error("path-set sequence is not extendable: edge {edge} has two representatives")]
    NotExtendable { edge: EdgeId },
    #[error("path enumeration for session {session} was truncated at {limit} paths")]
    PathEnumerationTruncated { session: usize, limit: usize },
    #[error("path {path:?} is not a valid path for session {session}")]
    UnknownPath { session: usize, path: Vec<EdgeId> },
    #[error("rate vector has {got} entries, network has {expected} sessions")]
    RateLength { expected: usize, got: usize },
    #[error("direction vector must be nonzero and nonnegative")]
    BadDirection,
    #[error("no local encoder for edge {0}")]
    MissingEncoder(EdgeId),
    #[error("edge {edge}: invalid encoder input ({reason})")]
    InvalidEncoderInput { edge: EdgeId, reason: String },
    #[error("field size {0} is too small")]
    FieldTooSmall(u32),
    #[error("field size {0} is not prime")]
    NotPrime(u32),
    #[error("witness is invalid: {0}")]
    WitnessInvalid(String),
    #[error("index coding instance invalid: {0}")]
    InvalidIndexInstance(String),
    #[error("deadline instance invalid: {0}")]
    InvalidDeadlineInstance(String),
    #[error("no source-to-sink path meets deadline {tau}")]
    DeadlineTooSmall { tau: u64 },
    #[error("edge set is not a minimum cut-set of the session-0 routing domain: {0}")]
    NotACutset(String),
    #[error("invalid input: {0}")]
    Input(String),
}
