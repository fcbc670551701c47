use crate::edgeset::Label;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge label {0} is not in the ground set")]
    UnknownLabel(Label),
    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    UnknownVertex { vertex: usize, vertex_count: usize },
    #[error("duplicate edge label {0}")]
    DuplicateLabel(Label),
    #[error("edge labels must be positive integers, got {0}")]
    InvalidLabel(Label),
    #[error("ground set has {0} edges; at most 64 are supported")]
    TooManyEdges(usize),
    #[error("edge {0} is a loop; contract loops through the matroid instead")]
    NotALink(Label),
    #[error("graph is not connected")]
    Disconnected,
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("invalid Whitney switch: {0}")]
    InvalidSwitch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("generated pair failed its post-check: {0}")]
    PostCheck(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
