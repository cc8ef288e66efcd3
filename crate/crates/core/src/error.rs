use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("operands live in different ambient groups")]
    AmbientMismatch,
    #[error("operation requires a finite subgroup")]
    InfiniteSubgroup,
    #[error("not a subgroup of the character's domain")]
    NotASubgroup,
    #[error("characters are defined on different domains")]
    DomainMismatch,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("relation is not antisymmetric: {0} and {1} lie on a cycle")]
    CycleDetected(String, String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("incidence elements live over different posets")]
    PosetMismatch,
    #[error("pair ({0}, {1}) is not comparable in the poset")]
    NotComparable(String, String),
    #[error("blocks do not partition the poset: {0}")]
    InvalidPartition(String),
    #[error("bimodules act on different blocks")]
    BlockMismatch,
    #[error("middle blocks of the factors differ")]
    ChainMismatch,
    #[error("degree conflict for character {character}: {first} vs {second}")]
    DegreeConflict {
        character: String,
        first: String,
        second: String,
    },
    #[error("chains through {via_first} and {via_second} disagree on M({from},{to})")]
    ChainInconsistency {
        from: String,
        to: String,
        via_first: String,
        via_second: String,
    },
    #[error("invalid grading datum: {0}")]
    InvalidDatum(String),
    #[error("datum does not satisfy the realizability conditions: {0}")]
    NotValid(String),
    #[error("realized relation is not transitive (library bug)")]
    InternalTransitivityFailure,
    #[error("no intermediate block between {0} and {1}")]
    NoIntermediateBlock(String, String),
    #[error("oracle inconsistency: {0}")]
    Oracle(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidElement(_) => "InvalidElement",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::AmbientMismatch => "AmbientMismatch",
            Error::InfiniteSubgroup => "InfiniteSubgroup",
            Error::NotASubgroup => "NotASubgroup",
            Error::DomainMismatch => "DomainMismatch",
            Error::InvalidCharacter(_) => "InvalidCharacter",
            Error::CycleDetected(..) => "CycleDetected",
            Error::InvalidPoset(_) => "InvalidPoset",
            Error::PosetMismatch => "PosetMismatch",
            Error::NotComparable(..) => "NotComparable",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::BlockMismatch => "BlockMismatch",
            Error::ChainMismatch => "ChainMismatch",
            Error::DegreeConflict { .. } => "DegreeConflict",
            Error::ChainInconsistency { .. } => "ChainInconsistency",
            Error::InvalidDatum(_) => "InvalidDatum",
            Error::NotValid(_) => "NotValid",
            Error::InternalTransitivityFailure => "InternalTransitivityFailure",
            Error::NoIntermediateBlock(..) => "NoIntermediateBlock",
            Error::Oracle(_) => "Oracle",
            Error::Parse(_) => "Parse",
        }
    }
}
