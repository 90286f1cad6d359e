//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate arc {0}->{1}")]
    DuplicateArc(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("sub-digraph: {0}")]
    BadSubDigraph(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("line {line}: {msg}")]
    BadLine { line: usize, msg: String },
    #[error("invalid graph6 byte {byte:#x} at position {pos}")]
    BadGraph6Byte { byte: u8, pos: usize },
    #[error("graph6 payload truncated: need {need} bytes, got {got}")]
    Graph6Truncated { need: usize, got: usize },
    #[error("graph too large for graph6 encoding: n={0}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("bad generator parameter: {0}")]
    BadParams(String),
    #[error("constraint unsatisfiable within {retries} retries for family {family}")]
    RetriesExhausted { family: String, retries: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("matching already covers the left side; no Hall violator exists")]
    LeftPerfect,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("state budget exceeded: need {need} states, budget {budget}")]
    BudgetExceeded { need: u128, budget: u64 },
    #[error("solver requires k >= 1")]
    ZeroCops,
    #[error("restricted game: {0}")]
    BadRestriction(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy failure at {stage}: {detail}")]
    Failure { stage: String, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("unknown bound name: {0}")]
    UnknownBound(String),
    #[error("missing parameter {0} for this bound")]
    MissingParam(&'static str),
    #[error("parameter out of range: {0}")]
    BadParam(String),
}
