use thiserror::Error;

/// Failures raised by the closed-form evaluators and the numerical oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The residue formula for the survival amplitude is singular; route through
    /// the Volterra solver instead.
    #[error("degenerate cubic roots (minimum separation {separation:.3e})")]
    DegenerateRoots { separation: f64 },

    #[error("invalid state: {0}")]
    State(String),

    #[error("non-finite kernel value at tau = {tau}")]
    NonFiniteKernel { tau: f64 },

    #[error("integrator failure at tau = {tau}: {reason}")]
    Integrator { tau: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
