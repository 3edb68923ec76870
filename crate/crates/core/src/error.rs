use thiserror::Error;

use crate::report::Axiom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("not an R-relation: {} fails", .failed.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "))]
    NotRRelation { failed: Vec<Axiom> },

    #[error("carrier of size {size} exceeds the limit of {limit}")]
    CarrierTooLarge { size: usize, limit: usize },

    #[error("invalid road system: {0}")]
    InvalidRoadSystem(String),

    #[error("map is not total: `{0}` has no image")]
    PartialMap(String),

    #[error("invalid partial order: {0}")]
    InvalidPoset(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("recovered order is not antisymmetric: `{0}` and `{1}` are mutually below each other")]
    OrderRecovery(String, String),

    #[error("invalid bound witness ({alpha}, {beta}): {reason}")]
    InvalidBoundWitness {
        alpha: String,
        beta: String,
        reason: String,
    },

    #[error("not a strong embedding: {0}")]
    NotStrongEmbedding(String),

    #[error("amalgamation failure: {0}")]
    AmalgamationFailure(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
