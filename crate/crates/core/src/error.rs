use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge ({0},{1}) is not covered")]
    InvalidCover(usize, usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for n={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("order is not a permutation of the vertex set")]
    BadPermutation,
    #[error("algorithm requires an adjacency list stream")]
    NotALModel,
    #[error("cursor advanced past its end")]
    AdvancePastEnd,
    #[error("vector length {got} does not match basis dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("neighbor {0} is not a cover vertex")]
    NeighborOutsideCover(usize),
    #[error("memory budget exceeded: {requested} words requested with {live} live, budget {budget}")]
    BudgetExceeded { requested: usize, live: usize, budget: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("oracle declared {declared} passes but consumed {actual}")]
    OracleFault { declared: u64, actual: u64 },
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("vertex {0} does not have degree two")]
    NotDegreeTwo(usize),
    #[error("pattern must be connected with at least three edges")]
    HTooSmall,
    #[error("outside count {i} not in 1..={h}")]
    BadI { i: usize, h: usize },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
