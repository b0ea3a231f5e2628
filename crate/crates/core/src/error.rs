use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {u}-{v} has weight {weight}; weights must be at least 1")]
    BadWeight { u: usize, v: usize, weight: u64 },
    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("configuration has {got} entries, graph has {expected} vertices")]
    ConfigLength { expected: usize, got: usize },
    #[error("move {from}->{to} is not an edge")]
    NotAnEdge { from: usize, to: usize },
    #[error("vertex {vertex} holds {have} pebbles, move needs {need}")]
    InsufficientPebbles { vertex: usize, have: u64, need: u64 },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("search budget of {budget} states exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("configuration is too large to encode as a search state")]
    StateTooWide,
    #[error("lower bound {0} is not attained by any unsolvable configuration")]
    InvalidLowerBound(u64),
    #[error("solution could not be normalized into an acyclic replay")]
    NormalizationFailed,

    #[error("graph is not a tree")]
    NotATree,
    #[error("not every block of the graph is a clique")]
    NotCliqueBlock,
    #[error("operation requires every edge weight to be 2")]
    NonUniformWeights,
    #[error("exact pebbling number of block #{block} exceeded its budget")]
    BlockOracleBudgetExceeded { block: usize },

    #[error("graph has diameter {0}, at most 2 is required")]
    DiameterTooLarge(usize),
    #[error("extremal graph needs at least 6 vertices, got {0}")]
    SpecTooSmall(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
