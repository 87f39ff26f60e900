use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no generators or facets given")]
    EmptyInput,
    #[error("cone is not pointed: {0}")]
    NotPointed(String),
    #[error("cone is not generating: {0}")]
    NotGenerating(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("exhaustive search over 2^{m} subsets exceeds the cap of 2^{cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("element is not strictly positive")]
    NotPositive,
    #[error("element is not an atom")]
    NotAtom,
    #[error("space is not pervasive")]
    NotPervasive,
    #[error("subspace is not a band")]
    NotABand,
    #[error("no decomposition: {0}")]
    NoDecomposition(String),
    #[error("subspaces do not form a direct sum of the whole space")]
    NotDirectSum,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("sequence is not a member of the space")]
    NotMember,
    #[error("sequence does not lie in C")]
    NotInC,
    #[error("unknown builtin space {0:?}")]
    UnknownBuiltin(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
