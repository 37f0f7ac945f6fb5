use thiserror::Error;

/// Errors reported by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown group preset `{0}`")]
    UnknownGroup(String),

    #[error("element is not hyperbolic (|trace| = {0})")]
    NotHyperbolic(f64),

    #[error("spectrum is empty and not certified complete")]
    EmptyIncompleteSpectrum,

    #[error("no zero at s = 1: Z(1) = {0}")]
    NoZeroAtOne(f64),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("metric is not cusp-type: {0}")]
    NotCuspType(String),

    #[error("quadrature did not converge: estimated error {error:e} above tolerance {tol:e}")]
    NonConvergence { error: f64, tol: f64 },

    #[error("fit residual {residual:e} above tolerance {tol:e}")]
    FitResidual { residual: f64, tol: f64 },

    #[error("cusp coefficients disagree: {0:?}")]
    CuspCoefficientMismatch(Vec<f64>),

    #[error("extrapolation not settled: {0}")]
    NotSettled(String),

    #[error("missing heat coefficients: {0}")]
    MissingHeatCoefficients(String),

    #[error("eigenvalue list too short: estimated truncation {estimate:e} above tolerance {tol:e}")]
    Truncation { estimate: f64, tol: f64 },

    #[error("surface signature (g={genus}, m={punctures}) is not stable")]
    Unstable { genus: u32, punctures: u32 },

    #[error("nonpositive input: {0}")]
    Nonpositive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
