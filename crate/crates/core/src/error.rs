use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures raised by the numerical core.
///
/// Domain errors name the offending parameter so that front ends can
/// surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {parameter} = {value} ({reason})")]
    Domain {
        parameter: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("zero separation between dipoles")]
    ZeroSeparation,
    #[error("quadrature did not converge: best estimate {value} with error {error_estimate} after {evaluations} evaluations")]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    #[error("integrand does not decay on the semi-infinite interval")]
    NonDecay,
    #[error("series tail bound violated at term {index}: |term| = {term} > bound {bound}")]
    SeriesBoundViolation { index: usize, term: f64, bound: f64 },
    #[error("series did not reach tolerance {tol}: remainder bound {remainder}")]
    SeriesNonConvergence { tol: f64, remainder: f64 },
    #[error(
        "Monte-Carlo sampler produced a zero-density point (partition {partition}, sample {index})"
    )]
    ZeroDensity { partition: usize, index: usize },
    #[error("ill-conditioned fit (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },
    #[error("fit failed to converge: residual {residual:e}")]
    FitNonConvergence { residual: f64 },
    #[error("energy drift {drift:e} exceeds tolerance {tolerance:e}; reduce the step size")]
    StepRejected { drift: f64, tolerance: f64 },
    #[error("Matsubara tail bound {bound:e} exceeds tail_tol {tail_tol:e}")]
    Truncation { bound: f64, tail_tol: f64 },
    #[error("divergent spectral integral: {0}")]
    DivergentIntegral(&'static str),
    #[error("spectral extraction failed at m = {m}: {reason}")]
    ExtractionFailure { m: f64, reason: &'static str },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(&'static str),
    #[error("internal consistency failure: {what} (routes differ by {difference:e})")]
    Consistency { what: &'static str, difference: f64 },
    #[error("invalid unit context: {0}")]
    InvalidUnits(&'static str),
}

impl Error {
    pub(crate) fn domain(parameter: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            parameter,
            value,
            reason,
        }
    }
}

/// Rejects non-positive or non-finite values.
pub(crate) fn require_positive(parameter: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(parameter, value, "must be finite and > 0"))
    }
}
