use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("root finder did not converge: {0}")]
    Convergence(String),
    #[error("unsupported dimension n = {0}: only the plane (n = 2) has an exact form")]
    UnsupportedDimension(u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("epsilon out of range: {0}")]
    EpsilonOutOfRange(String),
    #[error("empty intersection: {0}")]
    EmptyIntersection(String),
    #[error("lambda out of range: {0}")]
    LambdaOutOfRange(String),
    #[error("K too large: {0}")]
    KTooLarge(String),
    #[error("internal consistency check failed: {0}")]
    SanityCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
