use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order {0}")]
    UnsupportedOrder(u32),
    #[error("field table for GF({q}) violates {axiom}")]
    AxiomViolation { q: u32, axiom: &'static str },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("subspace does not contain the residue base")]
    NotContaining,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("instance too large: {count} exceeds cap {cap}")]
    TooLarge { count: u64, cap: u64 },
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("no round-up {0} found on either side")]
    NoRoundups(&'static str),
    #[error("graph is not of Grassmann type: {0}")]
    NotGrassmann(String),
    #[error("series direction is ambiguous at step {0}")]
    DirectionAmbiguous(usize),
    #[error("series did not stop within {0} steps")]
    SeriesDiverged(usize),
    #[error("graph is not a containment graph of type I")]
    NotTypeI,
    #[error("unrecognized structure at stage {0}")]
    UnrecognizedStructure(String),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("unsupported spec: {0}")]
    UnsupportedSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
