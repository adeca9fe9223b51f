use thiserror::Error;

/// Errors raised while constructing or querying graphs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {index} out of range (vertex count {count})")]
    InvalidVertex { index: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("log* is undefined for 0")]
    LogStarOfZero,
}

/// Errors raised by the DIMACS-like graph reader.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl ParseError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }
}

/// Contract violations and oracle guards in the coloring machinery.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("input coloring is not proper: {0}")]
    ImproperColoring(String),
    #[error("edge {0} is already colored")]
    AlreadyColored(usize),
    #[error("edge {0} is not in the given subgraph")]
    EdgeNotInSubgraph(usize),
    #[error("oracle scale guard exceeded: {got} colored edges in H (limit {limit})")]
    OracleScale { got: usize, limit: usize },
    #[error("augmentation invariant failed: {0}")]
    Internal(String),
}

/// Failures of a full algorithm run.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("escalation cap exceeded: {uncolored} edges uncolored at radius {radius}")]
    EscalationCapExceeded { uncolored: usize, radius: usize },
    #[error("output verification failed with {0} violations")]
    VerificationFailed(usize),
    #[error("parallel safety violated: vertex {vertex} touched twice in class {class}")]
    ParallelSafetyViolation { vertex: usize, class: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
