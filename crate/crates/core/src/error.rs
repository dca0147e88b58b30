//! Error type shared by the library operations.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// No term of the DNF survives the substitution, so the result is not a
    /// positive DNF.
    #[error("substitution is undefined: no term survives")]
    UndefinedSubstitution,
    /// The operation requires a non-constant input.
    #[error("operation is undefined for the constant TRUE")]
    ConstantInput,
    /// The requested shared-variable set is not part of the formula.
    #[error("delta variables {0:?} do not occur in the DNF")]
    InvalidDelta(Vec<String>),
    /// Brute-force enumeration guard; the oracle never truncates silently.
    #[error("instance has {actual} variables, oracle limit is {limit}")]
    TooManyVariables { actual: usize, limit: usize },
    /// Assignment-set join requires pairwise-disjoint universes.
    #[error("assignment-set universes overlap on {0}")]
    OverlappingUniverses(String),
}
