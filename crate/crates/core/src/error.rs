use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Magnitudes are carried as `f64` regardless of the working scalar so the
/// error type stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point radius {radius} exceeds 1")]
    RadiusExceeded { radius: f64 },
    #[error("point radius {radius} is on or too close to the unit sphere")]
    BoundaryPoint { radius: f64 },
    #[error("expected a {expected}-dimensional point, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("density matrix is singular: eigenvalue pair sum {pair_sum:e}")]
    SingularState { pair_sum: f64 },
    #[error(
        "quadrature did not converge: error estimate {err_est:e} above tolerance {tolerance:e}"
    )]
    ToleranceNotReached { err_est: f64, tolerance: f64 },
    #[error("exp(|beta|) overflows for beta = {beta}")]
    Overflow { beta: f64 },
    #[error("{what} = {value} outside the supported domain {domain}")]
    DomainExceeded {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
