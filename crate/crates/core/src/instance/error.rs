use thiserror::Error;

/// Instance-file parse failures. Line numbers are 1-based.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: node id {id} out of range (expected 1..={n})")]
    NodeOutOfRange { line: usize, id: i64, n: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: weight {weight} is not allowed here")]
    InvalidWeight { line: usize, weight: f64 },
    #[error("header declares {declared} edges but {found} were read")]
    CountMismatch { declared: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("missing section or field `{0}`")]
    MissingSection(String),
    #[error("line {line}: item references unknown city {city}")]
    UnknownCity { line: usize, city: i64 },
    #[error("instance has no items")]
    NoItems,
    #[error("invalid instance parameter: {0}")]
    InvalidParameter(String),
}

/// Non-fatal observations made while parsing.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseWarning {
    /// An arc probability `weight / indegree` exceeded 1 and was clamped.
    ClampedProbability { line: usize, from: usize, to: usize, raw: f64 },
}
