use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("point {index} is the zero vector")]
    DegeneratePoint { index: usize },

    #[error("points {first} and {second} have proportional parameters")]
    DuplicatePoint { first: usize, second: usize },

    #[error("matrix has rank {found}, expected full rank {expected}")]
    RankDeficient { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("leading {size}x{size} block is singular; columns {witness} are independent")]
    SingularLeadingBlock { size: usize, witness: String },

    #[error("configuration is not strongly non-degenerate: all points except {point} lie on a hyperplane")]
    NotStronglyNondegenerate { point: usize },

    #[error("matrices do not form a Gale pair: {0}")]
    NotAGalePair(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("sampling failed after {attempts} attempts: {reason}")]
    SamplingFailed { attempts: usize, reason: String },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
