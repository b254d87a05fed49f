use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical and arithmetic routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at s = {0}")]
    PoleAt(Complex64),

    #[error("argument too close to a pole: {0}")]
    NearPole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arguments {0} and {1} are not coprime")]
    NotCoprime(i64, i64),

    #[error("series diverges: {0}")]
    DivergentSeries(String),

    #[error("series does not converge: {0}")]
    NonConvergent(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("overflow while evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Reject non-finite results instead of letting them propagate.
pub(crate) fn finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(what))
    }
}
