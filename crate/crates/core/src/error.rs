use thiserror::Error;

/// Errors produced by the ranking library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("network has no nodes")]
    Empty,

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),

    #[error("label {0:?} is not in the roster")]
    UnknownLabel(String),

    #[error("missing column {0:?} in header")]
    MissingColumn(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("row {row} of the adjacency matrix sums to zero; patch zero rows first")]
    ZeroRow { row: usize },

    #[error("column {col} sums to {sum}, not 1")]
    NotStochastic { col: usize, sum: f64 },

    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("epsilon must lie in [0, 1], got {0}")]
    EpsilonOutOfRange(f64),

    #[error("the multiplicity of the eigenvalue 1 is not one (found {multiplicity})")]
    Multiplicity { multiplicity: usize },

    #[error("degenerate eigenvector: entries sum to zero")]
    DegenerateEigenvector,

    #[error("eigenvalue computation did not converge")]
    EigenSolver,

    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize, last: Vec<f64> },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid initial vector: {0}")]
    InitialVector(String),

    #[error("invalid block layout: {0}")]
    BlockSpec(String),

    #[error("invalid probability {0}")]
    Probability(f64),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
