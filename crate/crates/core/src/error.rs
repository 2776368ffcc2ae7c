use thiserror::Error;

use crate::engine::Diagnostic;
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("repeated edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("block size must be positive")]
    ZeroBlockSize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("blocks must be non-empty")]
    EmptyBlock,
    #[error("block {block} has {size} vertices, expected {expected}")]
    UnequalBlocks {
        block: usize,
        size: usize,
        expected: usize,
    },
    #[error("vertex {vertex} outside 0..{total}")]
    VertexOutOfRange { vertex: Vertex, total: usize },
    #[error("vertex {0} appears in more than one block")]
    Overlap(Vertex),
    #[error("{vertex_count} vertices cannot be split into blocks of {k}")]
    NotDivisible { vertex_count: usize, k: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    /// The hypothesis k ≥ 2Δ with at most three blocks does not hold.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("partition does not match the padded graph: {0}")]
    PartitionMismatch(String),
    /// A configuration the construction rules out was reached.
    #[error("internal contradiction: {0}")]
    InternalContradiction(Box<Diagnostic>),
}

impl SolveError {
    pub fn diagnostic(&self) -> Option<&Diagnostic> {
        match self {
            SolveError::InternalContradiction(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("left and right sides share vertex {0}")]
    Overlap(Vertex),
    #[error("edge endpoint {0} is not on its declared side")]
    WrongSide(Vertex),
    #[error("sides have different sizes ({left} vs {right})")]
    UnequalSides { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("vertex {vertex} has cross degree {degree}, below the required {required}")]
    DegreeTooLow {
        vertex: Vertex,
        degree: usize,
        required: usize,
    },
    #[error("invalid tripartite instance: {0}")]
    Invalid(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("Δ = {delta} exceeds n/2 for n = {n}")]
    DeltaTooLarge { delta: usize, n: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}
