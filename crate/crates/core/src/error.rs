use thiserror::Error;

/// Errors produced by graph construction, parsing and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node {label} is out of range 1..={n}")]
    NodeOutOfRange { label: usize, n: usize },

    #[error(
        "edge ({tail}, {head}) has invalid weight {weight}: weights must be finite and nonzero"
    )]
    InvalidWeight {
        tail: usize,
        head: usize,
        weight: f64,
    },

    #[error("duplicate edge ({tail}, {head})")]
    DuplicateEdge { tail: usize, head: usize },

    #[error("a digraph needs at least one node")]
    NoNodes,

    #[error("node set must not be empty")]
    EmptyNodeSet,

    #[error("pair ({0}, {0}) is a self-loop, not a pairwise interaction")]
    SelfPair(usize),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("brute-force enumeration is limited to {max} nodes, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// True for failures of the numerical kernels rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonFinite { .. } | Error::NoConvergence)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
