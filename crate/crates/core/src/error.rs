use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model parameter lies outside its domain (e.g. `H >= 1` for FGN).
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    /// A numerical routine failed (factorization, non-finite result).
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// A structural constraint is violated (segment too short, infeasible K).
    #[error("constraint violated: {0}")]
    Constraint(String),
    /// The input carries no usable information (zero variance, zero fluctuation).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Fewer than three scales survive the frequency-band restriction.
    #[error("frequency band too narrow: {0}")]
    BandTooNarrow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::ParameterDomain(msg.into())
    }
}
