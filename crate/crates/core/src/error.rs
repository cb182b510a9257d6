use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation column {column} does not lie in the subgroup lattice")]
    RelationNotInSubgroup { column: usize },

    #[error("vector does not lie in the subgroup lattice")]
    NotInLattice,

    #[error("quotient has a free summand; only finite groups are supported")]
    NotFinite,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("truncation too shallow: level {requested} requested, complex stops at degree {available}")]
    TruncationTooShallow { requested: usize, available: usize },

    #[error("brute-force oracle limited to rank 3, got rank {0}")]
    RankTooLarge(usize),

    #[error("invalid monotone map: {0}")]
    InvalidMap(String),

    #[error("pushout square does not have the expected split form: {0}")]
    PushoutShapeUnexpected(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
