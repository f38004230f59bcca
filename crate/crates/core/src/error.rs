//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("cycle detected involving `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("not a lattice: {0}")]
    NotALattice(NotALatticeReason),
    #[error("enumeration exceeds the materialization bound ({0} elements)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotALatticeReason {
    /// The pair has no greatest lower bound.
    NoMeet(String, String),
    /// The pair has no least upper bound.
    NoJoin(String, String),
    Empty,
}

impl std::fmt::Display for NotALatticeReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotALatticeReason::NoMeet(a, b) => write!(f, "pair ({a}, {b}) has no meet"),
            NotALatticeReason::NoJoin(a, b) => write!(f, "pair ({a}, {b}) has no join"),
            NotALatticeReason::Empty => write!(f, "empty carrier"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("carrier lacks {0} structure required by the category tag")]
    MissingStructure(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("object kind mismatch: {monad} acts on {expected}, got {found}")]
    WrongKind {
        monad: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("subset budget exceeded: more than {budget} admissible subsets (stopped at {count})")]
    BudgetExceeded { count: usize, budget: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("input homomorphism is invalid: {0}")]
    InvalidHom(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("split diagram identity `{identity}` violated at `{witness}`")]
    IdentityViolated { identity: String, witness: String },
    #[error("morphism does not factor: `{0}` is outside the unit image")]
    NotFactorable(String),
    #[error(transparent)]
    Monad(#[from] MonadError),
}
