//! Error type shared by every module in the crate.

/// Errors surfaced by constructors and fallible operations.
///
/// Predicates on objects that were built by this crate (adjacency, closeness,
/// incidence) assert their preconditions instead: a mismatch there is a
/// caller bug, not a recoverable condition.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {order} exceeds ceiling {ceiling}")]
    OrderTooLarge { order: u64, ceiling: u64 },
    #[error("invalid reduction polynomial: {0}")]
    BadPolynomial(String),
    #[error("reduction polynomial is reducible over GF({p})")]
    ReduciblePolynomial { p: u64 },
    #[error("invalid ambient configuration: {0}")]
    InvalidAmbient(String),
    #[error("subspace dimension {dim} out of range 0..={n}")]
    DimensionOutOfRange { dim: usize, n: usize },
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("pencil requires nested subspaces with a dimension gap of exactly 2")]
    BadPencil,
    #[error("{what} size {size} exceeds ceiling {ceiling}")]
    SizeCeiling {
        what: &'static str,
        size: u128,
        ceiling: u128,
    },
    #[error("point {0} is not a member of the pair space")]
    PointNotInSpace(u32),
    #[error("operation requires a {expected} pair space")]
    WrongSpaceKind { expected: &'static str },
    #[error("points are not adjacent")]
    NotAdjacent,
    #[error("image pair ({0}, {1}) is not a point of the target space")]
    ImageNotInSpace(u32, u32),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("operation is undefined in characteristic 2")]
    CharacteristicTwo,
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("fixed space has dimension {got}, expected {expected}")]
    WrongInvolutionType { got: usize, expected: usize },
    #[error("graph has {vertices} vertices, exceeding ceiling {ceiling}")]
    VertexCeiling { vertices: usize, ceiling: usize },
    #[error("unknown check name: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
