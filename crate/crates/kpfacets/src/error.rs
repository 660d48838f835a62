use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix shape {rows}x{cols} does not match {entries} entries")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        entries: usize,
    },

    #[error("negative value rejected for {context}")]
    NegativeEntry { context: &'static str },

    #[error("positive value required for {context}")]
    NonPositiveEntry { context: &'static str },

    #[error("invalid graph: {0}")]
    InvalidGraph(&'static str),

    #[error("profile entry {value} out of range for block {block} of size {size}")]
    ProfileOutOfRange {
        block: usize,
        value: usize,
        size: usize,
    },

    #[error("block index {block} out of range ({blocks} blocks)")]
    BlockOutOfRange { block: usize, blocks: usize },

    #[error("polytope is not full-dimensional: some weight exceeds the capacity")]
    NotFullDimensional,

    #[error("inequality is not valid over the knapsack polytope")]
    NotValid,

    #[error("operation requires an inequality with no zero-coefficient tail")]
    TailNotEmpty,

    #[error("operation requires an inequality with a nonempty zero-coefficient tail")]
    TailEmpty,

    #[error("problem size {size} exceeds the enumeration limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("target {target} outside the representable range [0, {max}]")]
    TargetOutOfRange { target: String, max: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
