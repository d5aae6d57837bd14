use thiserror::Error;

/// Errors produced by parsing, metric computation, and batch orchestration.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based and counts every file line,
    /// including headers and comments.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A network with an empty partition (or no nodes at all).
    #[error("empty network: {0}")]
    EmptyNetwork(String),

    /// An operation that needs at least one value got none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// An edge list that violates the simple-graph invariants.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Modularity divides by 2m and is undefined on edgeless graphs.
    #[error("modularity is undefined on a graph with no edges")]
    UndefinedModularity,

    /// Requested more added edges than there are absent cross-partition pairs.
    #[error("cannot add {requested} edges: only {available} cross-partition pairs are absent")]
    Capacity { requested: usize, available: usize },

    /// The sweep grid contains no k values.
    #[error("sweep grid is empty: {0}")]
    EmptyGrid(String),

    /// A bad manifest file (duplicate ids, missing files, unknown formats).
    #[error("manifest error: {0}")]
    Manifest(String),

    /// An out-of-range configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The eigensolver did not converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
