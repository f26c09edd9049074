use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or algorithm parameter lies outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An evaluation point lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Quadrature level escalation stopped without two agreeing estimates.
    #[error("quadrature did not converge: last estimates {previous} and {last}")]
    Convergence { previous: f64, last: f64 },
    /// Bisection failed to shrink an eigenvalue bracket below the tolerance.
    #[error("eigenvalue bisection did not converge: brackets {brackets:?}")]
    Bisection { brackets: Vec<(f64, f64)> },
    /// The operation is undefined for the given configuration (e.g. a deformed quantity at zero deformation).
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parameter<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
