use thiserror::Error;

/// Error raised by constructions and verifiers.
///
/// Law violations are never errors: they are recorded as failing checks in a
/// [`crate::report::VerificationReport`]. Errors are reserved for malformed
/// input, unsupported operations and exhausted budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    /// Ill-typed data: mismatched endpoints, unknown ids, non-composable pairs.
    #[error("structural error: {0}")]
    Structural(String),
    /// The operation needs a capability the backend lacks (e.g. enumeration).
    #[error("capability error: {0}")]
    Capability(String),
    /// A computation ran out of its step budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// Input text or JSON could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A hypothesis of a construction does not hold on the supplied data.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// Internal consistency failure; indicates a bug.
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, CatError>;

pub(crate) fn structural<T>(msg: impl Into<String>) -> Result<T> {
    Err(CatError::Structural(msg.into()))
}

pub(crate) fn capability<T>(msg: impl Into<String>) -> Result<T> {
    Err(CatError::Capability(msg.into()))
}
