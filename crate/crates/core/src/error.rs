use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("relation {index} is not admissible: {reason}")]
    NonAdmissibleRelation { index: usize, reason: String },

    #[error("relation ideal is not admissible: paths of length {bound} survive")]
    IdealNotAdmissible { bound: usize },

    #[error("algebra multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("representation violates relation {relation}")]
    RelationViolated { relation: String },

    #[error("not a submodule: {0}")]
    NotClosed(String),

    #[error("operation requires a nonzero module")]
    ZeroModule,

    #[error("{0} requires a finite field; enumeration over the rationals is infinite")]
    NeedsFiniteField(&'static str),

    #[error("submodule enumeration exceeded the cap of {cap} (found at least {found})")]
    CapExceeded { cap: usize, found: usize },

    #[error("polynomial factorization over Q is outside the supported range: {0}")]
    UnsupportedFactorization(String),

    #[error("idempotent search gave up after {0} attempts")]
    SearchExhausted(usize),

    #[error("degenerate witness: {0}")]
    DegenerateWitness(String),

    #[error("module is decomposable; expected an indecomposable input")]
    Decomposable,

    #[error("{0}")]
    Unsupported(String),
}
