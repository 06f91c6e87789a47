use thiserror::Error;

/// Errors produced by matrix construction, I/O, and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },

    #[error("index ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("invalid matrix structure: {0}")]
    InvalidStructure(String),

    #[error("matrix market parse error at line {line}: {msg}")]
    MarketFormat { line: usize, msg: String },

    #[error("unsupported matrix market file: {0}")]
    MarketUnsupported(String),

    #[error("infeasible synthetic profile: {0}")]
    InfeasibleProfile(String),

    #[error("row {row} has {nnz} nonzeros, exceeding the {limit} the prefix field can count")]
    RowNnzOverflow { row: usize, nnz: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid serialized matrix: {0}")]
    InvalidSerialization(String),

    #[error("node operand buffer overflow: {occupancy} entries with depth {depth}")]
    BufferOverflow { occupancy: usize, depth: usize },

    #[error("sizing is not integral: {0}")]
    NonIntegralSizing(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
