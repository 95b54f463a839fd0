use thiserror::Error;

use crate::parse::ParseError;

/// Errors raised by the analysis operations.
///
/// Parse errors carry their own positional payload and are wrapped here so
/// that callers can funnel everything through one result type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("alternative index {index} out of range (m = {m})")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("agent index {index} out of range (n = {n})")]
    AgentOutOfRange { index: usize, n: usize },

    #[error("cannot Pareto-compare an alternative with itself")]
    SameAlternative,

    #[error("profile contains a Pareto indifferent pair; the degeneracy characterization does not apply")]
    ParetoIndifferentPair,

    #[error("alternative '{0}' is not Pareto optimal")]
    NotParetoOptimal(String),

    #[error("alternative '{0}' strictly dominates nothing: D(a) is empty")]
    EmptyDominatedSet(String),

    #[error("support enumeration needs 2^m - 1 subsets; m = {m} exceeds the cap of {cap}")]
    EnumerationCap { m: usize, cap: usize },

    #[error("assignment enumeration needs n! permutations; n = {n} exceeds the cap of {cap}")]
    AssignmentCap { n: usize, cap: usize },

    #[error("utility profile is not consistent with the preference profile")]
    InconsistentUtilities,

    #[error("support must be nonempty")]
    EmptySupport,

    #[error("operation requires strict object preferences, but agent {agent} has ties")]
    WeakObjectPreferences { agent: usize },

    #[error("unknown alternative '{0}'")]
    UnknownAlternative(String),

    /// A decision procedure and its independent cross-check disagreed, or a
    /// certified witness failed re-verification. This is a bug trap, never a
    /// user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
