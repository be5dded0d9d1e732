use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("element is not invertible: {0}")]
    NonInvertible(String),
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("group must be abelian for this flavor")]
    NonAbelianGroup,
    #[error("diagram violates flavor constraints: {0}")]
    FlavorViolation(String),
    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),
    #[error("node is not a defect: {0}")]
    NotADefect(usize),
    #[error("link state has a missing node at {0}")]
    HasMissingNode(usize),
    #[error("character does not vanish on the ideal (basis index {0})")]
    CharacterNotVanishing(usize),
    #[error("algebra has no maximum-rank basis diagram")]
    NoMaxDiagram,
    #[error("no diagram satisfies the required conditions")]
    NotFound,
    #[error("maps have incompatible characters")]
    CharacterIncompatible,
    #[error("algebras have mismatched parameters: {0}")]
    ParamMismatch(String),
    #[error("group is infinite: {0}")]
    InfiniteGroup(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
