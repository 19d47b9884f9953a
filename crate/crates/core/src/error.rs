use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the region where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature exhausted its budget before meeting tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// An alternating series cancelled away the working precision.
    #[error("cancellation loss: {0}")]
    CancellationLoss(String),

    /// An integrand or intermediate value was NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn non_convergence(msg: impl Into<String>) -> Self {
        Error::NonConvergence(msg.into())
    }
}
