use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("{routine} did not converge after {iterations} iterations")]
    NonConvergence { routine: &'static str, iterations: usize },

    #[error("invalid prior: {0}")]
    InvalidPrior(&'static str),

    #[error("operation requires a proper prior")]
    ImproperPrior,

    #[error("operation requires an improper tilted prior")]
    RequiresImproper,

    #[error("bracket expansion failed in {0}")]
    BracketExpansion(&'static str),

    #[error("method not applicable: {0}")]
    MethodMismatch(&'static str),

    #[error("operation is undefined on an empty region")]
    EmptyRegion,

    #[error("invalid region: {0}")]
    InvalidRegion(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// Checks that a value is finite, naming it in the error.
pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain { what, value })
    }
}
