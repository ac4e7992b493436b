//! Confidence sequences from the mixture likelihood ratio: the Ville (VCS)
//! and extended Ville (eVCS) regions, the improper-prior closed forms,
//! limiting intervals under prior–data conflict, p-value functions and
//! Pratt thresholds.

mod construct;
mod pvalue;
mod region;

use alloc::vec::Vec;

pub use construct::{
    evcs, evcs_bracket_strict, evcs_grid, evcs_improper, hpd_limit_interval, improper_half_width, limiting_interval,
    region, search_window, vcs, vcs_gaussian_closed_form, Direction, GRID_POINTS, REFINE_FACTOR,
};
pub use pvalue::{
    ln_likelihood_ratio, p_value_eville, p_value_pratt, p_value_ville, pratt_threshold, pratt_thresholds,
    PrattThreshold, MIN_PRATT_SAMPLES,
};
pub use region::{hausdorff, ConfidenceRegion};

use crate::error::{finite, Error, Result};
use crate::model::{GaussianModel, SufficientStat};
use crate::priors::Prior;

/// How a region is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CsMethod {
    /// threshold `1/α`
    Ville,
    /// extended Ville, membership evaluated on a grid (may be disconnected)
    EvilleGrid,
    /// extended Ville, endpoints root-found either side of the posterior mean
    EvilleBracket,
    /// extended Ville for the tilted improper prior, in closed form
    ImproperClosedForm,
}

/// Everything needed to build one region.
#[derive(Debug, Clone, Copy)]
pub struct CsQuery<'a> {
    prior: &'a Prior,
    model: GaussianModel,
    alpha: f64,
    stat: SufficientStat,
    method: CsMethod,
}

impl<'a> CsQuery<'a> {
    pub fn new(
        prior: &'a Prior,
        model: GaussianModel,
        alpha: f64,
        stat: SufficientStat,
        method: CsMethod,
    ) -> Result<Self> {
        finite("alpha", alpha)?;
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain { what: "alpha", value: alpha });
        }
        match method {
            CsMethod::Ville | CsMethod::EvilleBracket if !prior.is_proper() => return Err(Error::ImproperPrior),
            CsMethod::ImproperClosedForm if prior.is_proper() => return Err(Error::RequiresImproper),
            _ => {}
        }
        Ok(Self { prior, model, alpha, stat, method })
    }

    pub fn prior(&self) -> &'a Prior {
        self.prior
    }

    pub fn model(&self) -> GaussianModel {
        self.model
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn stat(&self) -> SufficientStat {
        self.stat
    }

    pub fn method(&self) -> CsMethod {
        self.method
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.prior, self.model, alpha, self.stat, self.method)
    }

    pub fn with_stat(&self, stat: SufficientStat) -> Self {
        Self { stat, ..*self }
    }

    pub fn with_method(&self, method: CsMethod) -> Result<Self> {
        Self::new(self.prior, self.model, self.alpha, self.stat, method)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PValueKind {
    Ville,
    Eville,
    Pratt,
}

/// A p-value function sampled on a grid of tested values.
#[derive(Debug, Clone, PartialEq)]
pub struct PValueCurve {
    kind: PValueKind,
    samples: Vec<(f64, f64)>,
}

impl PValueCurve {
    pub fn new(kind: PValueKind, samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.iter().any(|&(t, p)| !t.is_finite() || !(0.0..=1.0).contains(&p)) {
            return Err(Error::Domain { what: "p-value sample", value: f64::NAN });
        }
        Ok(Self { kind, samples })
    }

    /// Evaluates the curve at `thetas`. `n_mc` and `seed` drive the Pratt
    /// simulation and are ignored otherwise; every tested value reuses the
    /// same seed so the curve is smooth in θ₀.
    pub fn evaluate(
        kind: PValueKind,
        prior: &Prior,
        model: &GaussianModel,
        stat: &SufficientStat,
        thetas: &[f64],
        n_mc: usize,
        seed: u64,
    ) -> Result<Self> {
        let samples = thetas
            .iter()
            .map(|&t| {
                let p = match kind {
                    PValueKind::Ville => p_value_ville(prior, model, stat, t)?,
                    PValueKind::Eville => p_value_eville(prior, model, stat, t)?,
                    PValueKind::Pratt => p_value_pratt(prior, model, stat, t, n_mc, seed)?,
                };
                Ok((t, p))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, samples)
    }

    pub fn kind(&self) -> PValueKind {
        self.kind
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}
