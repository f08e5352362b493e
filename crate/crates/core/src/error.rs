use thiserror::Error;

/// Errors raised by the engine. Every failure mode is a distinct variant so
/// callers (the CLI in particular) can map them onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid mixed graph: {0}")]
    InvalidGraph(String),

    #[error("invalid mixed adjacency matrix: {0}")]
    InvalidMatrix(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("size {size} exceeds the supported limit of {limit} for {what}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("matrix is not condensed at rho = {0}; condense it first")]
    NotCondensed(String),

    #[error("structural mismatch: {0}")]
    Mismatch(String),

    #[error("no real root of {poly} in the interval [{lo}, {hi}]")]
    NoRoot { poly: String, lo: String, hi: String },

    #[error("{count} real roots of {poly} in [{lo}, {hi}]; expected exactly one")]
    MultipleRoots {
        poly: String,
        lo: String,
        hi: String,
        count: usize,
    },

    #[error("operation does not apply to classification {0}")]
    WrongClassification(String),

    #[error("empty family of forbidden graphs")]
    EmptyFamily,

    #[error("ratio certificate extraction failed: {0}")]
    Certificate(String),

    #[error("candidate set is empty: {0}")]
    NoCandidates(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
