use thiserror::Error;

/// A malformed input line. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, reason: impl Into<String>) -> Self {
        Self {
            line,
            column,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("layer {0:?} has no members")]
    EmptyLayer(String),
    #[error("node {node:?} has no layer ({reason})")]
    MissingLayerAttribute { node: String, reason: String },
    #[error("layers have not been assigned")]
    LayersUnassigned,
    #[error("invalid node id: {0:?}")]
    InvalidNodeId(String),
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("edge references unknown node {0:?}")]
    UnknownNode(String),
    #[error("node {0:?} has a non-finite position")]
    NonFinitePosition(String),
    #[error("at least two layers are required")]
    SingleLayer,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
