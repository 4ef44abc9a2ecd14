use thiserror::Error;

/// Errors reported by the analysis engines and file parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("no edge ({0}, {1}) in graph")]
    NoSuchEdge(usize, usize),

    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("{what}: search budget of {budget} nodes exhausted")]
    SearchBudgetExceeded { what: &'static str, budget: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("rate {0} exceeds 1; no graph supports it")]
    RateTooHigh(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("graph is not bidirectional: edge ({0}, {1}) has no reverse")]
    NotBidirectional(usize, usize),

    #[error("not a sink partition: edge ({0}, {1}) leaves the sink side")]
    NotASinkPartition(usize, usize),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("not a clique partition: {0}")]
    NotACliquePartition(String),

    #[error("data file missing: {0}")]
    DataFileMissing(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by a configured size limit or search budget.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::SizeLimitExceeded { .. } | Error::SearchBudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimitExceeded { what, size, limit })
    } else {
        Ok(())
    }
}
