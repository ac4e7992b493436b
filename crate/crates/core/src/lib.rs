//! Anytime-valid confidence sequences for the mean of Gaussian observations
//! with known variance, built by the method of mixtures.
//!
//! The crate covers both calibrations of the mixture likelihood ratio:
//!
//! * the Ville confidence sequence (VCS), which thresholds the ratio at `1/α`;
//! * the extended Ville confidence sequence (eVCS), which thresholds it at the
//!   tested-value dependent level `g_θ₀⁻¹(α)` and stays bounded under
//!   prior–data conflict when the prior has polynomial or exponential tails.
//!
//! Everything here is pure computation over the sufficient statistic `(n, ȳ)`.
//! The crate is `no_std` and needs only `alloc`; file formats, experiments and
//! the command line live in the companion harness crate.
//!
//! ```
//! use boundcs::{CsMethod, CsQuery, GaussianModel, Prior, SufficientStat};
//!
//! let prior = Prior::horseshoe(0.0, 1.0).unwrap();
//! let model = GaussianModel::new(1.0).unwrap();
//! let stat = SufficientStat::new(10, 0.4).unwrap();
//! let query = CsQuery::new(&prior, model, 0.1, stat, CsMethod::EvilleBracket).unwrap();
//! let region = boundcs::confseq::evcs(&query).unwrap();
//! assert!(region.contains(0.4));
//! ```

#![no_std]
#![forbid(unsafe_code)]
// tabulated constants keep their published digits; `!(x > 0.0)` is the
// NaN-rejecting guard used throughout
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calibration;
pub mod confseq;
mod error;
pub(crate) mod math;
mod model;
pub mod numerics;
pub mod priors;

/// Crate version, recorded alongside experiment outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use calibration::{CalibrationFn, KappaCalibration};
pub use confseq::{ConfidenceRegion, CsMethod, CsQuery, Direction, PValueCurve, PValueKind};
pub use error::{Error, Result};
pub use model::{GaussianModel, SufficientStat};
pub use numerics::{Bracket, Tolerance};
pub use priors::{MarginalEval, MarginalMethod, Prior, PriorKind, TailProfile};
