use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arc {arc} is a self-loop at vertex {vertex}")]
    SelfLoop { arc: usize, vertex: usize },

    #[error("arc {arc} ({u}, {v}) duplicates an earlier arc")]
    DuplicateArc { arc: usize, u: usize, v: usize },

    #[error("arc {arc} names vertex {vertex}, but the graph has {n} vertices")]
    VertexOutOfRange { arc: usize, vertex: usize, n: usize },

    #[error("weight of arc {arc} is {weight}; weights must be finite and nonnegative")]
    InvalidWeight { arc: usize, weight: f64 },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a permutation of the vertex set: {0}")]
    NotAPermutation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("internal construction failed: {0}")]
    InternalGap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
