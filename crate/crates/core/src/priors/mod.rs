//! Mixing measures, their marginal likelihoods for the sample mean, tail
//! profiles and the Tweedie posterior mean.

mod conflict;
mod marginal;
mod scale_mixture;
mod tail;

use alloc::vec::Vec;

use crate::error::{finite, Error, Result};
use crate::math::{abs, exp, lgamma, ln, ln_1p, HALF_LN_2PI, PI};

pub use conflict::conflict_index;
pub use marginal::{
    ln_marginal, ln_marginal_value, marginal, marginal_by_quadrature, posterior_mean, MarginalEval, MarginalMethod,
};
pub use tail::{tail_profile, TailProfile};

/// The family of a prior together with its shape parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorKind {
    Gaussian,
    Laplace,
    StudentT {
        df: f64,
    },
    Horseshoe,
    GaussianMixture {
        weights: Vec<f64>,
        locations: Vec<f64>,
        scales: Vec<f64>,
    },
    /// The improper density `(2πs²)^{-1/2}·exp(−κ(θ − c)/s)` with centre `c`
    /// and tilt unit `s`; `κ = 0` is the flat prior.
    ImproperTilted {
        kappa: f64,
    },
}

/// A prior `Π₀` on the mean.
///
/// `location` and `scale` are the usual location/scale of the family: mean
/// and standard deviation for the Gaussian, `b` for the Laplace, the half-Cauchy
/// global scale for the horseshoe. For a Gaussian mixture they summarise the
/// components (mixture mean and largest component scale). For the improper
/// tilt, `location` is the centre and `scale` the unit `s` of the tilt, which
/// should equal the observation `σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prior {
    kind: PriorKind,
    location: f64,
    scale: f64,
}

fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain { what, value })
    }
}

impl Prior {
    pub fn gaussian(location: f64, scale: f64) -> Result<Self> {
        Self::simple(PriorKind::Gaussian, location, scale)
    }

    pub fn laplace(location: f64, scale: f64) -> Result<Self> {
        Self::simple(PriorKind::Laplace, location, scale)
    }

    pub fn student_t(df: f64, location: f64, scale: f64) -> Result<Self> {
        positive("df", df)?;
        Self::simple(PriorKind::StudentT { df }, location, scale)
    }

    pub fn horseshoe(location: f64, scale: f64) -> Result<Self> {
        Self::simple(PriorKind::Horseshoe, location, scale)
    }

    pub fn improper_tilted(kappa: f64, center: f64, sigma: f64) -> Result<Self> {
        finite("kappa", kappa)?;
        Self::simple(PriorKind::ImproperTilted { kappa }, center, sigma)
    }

    /// Finite Gaussian mixture `Σ wₖ N(μₖ, sₖ²)`; weights must be positive
    /// and sum to one within 1e−9.
    pub fn gaussian_mixture(weights: Vec<f64>, locations: Vec<f64>, scales: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.len() != locations.len() || weights.len() != scales.len() {
            return Err(Error::InvalidPrior("mixture components must have matching, non-zero lengths"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidPrior("mixture weights must be positive"));
        }
        if abs(weights.iter().sum::<f64>() - 1.0) > 1e-9 {
            return Err(Error::InvalidPrior("mixture weights must sum to one"));
        }
        for &m in &locations {
            finite("mixture location", m)?;
        }
        for &s in &scales {
            positive("mixture scale", s)?;
        }
        let location = weights.iter().zip(&locations).map(|(w, m)| w * m).sum();
        let scale = scales.iter().copied().fold(0.0, f64::max);
        Ok(Self { kind: PriorKind::GaussianMixture { weights, locations, scales }, location, scale })
    }

    fn simple(kind: PriorKind, location: f64, scale: f64) -> Result<Self> {
        finite("location", location)?;
        positive("scale", scale)?;
        Ok(Self { kind, location, scale })
    }

    pub fn kind(&self) -> &PriorKind {
        &self.kind
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_proper(&self) -> bool {
        !matches!(self.kind, PriorKind::ImproperTilted { .. })
    }

    pub fn is_log_concave(&self) -> bool {
        matches!(self.kind, PriorKind::Gaussian | PriorKind::Laplace)
    }

    /// Symmetric about `location` with the mode there.
    pub fn is_symmetric_unimodal(&self) -> bool {
        matches!(
            self.kind,
            PriorKind::Gaussian | PriorKind::Laplace | PriorKind::StudentT { .. } | PriorKind::Horseshoe
        )
    }

    /// Tilt of an improper prior, if it is one.
    pub fn kappa(&self) -> Option<f64> {
        match self.kind {
            PriorKind::ImproperTilted { kappa } => Some(kappa),
            _ => None,
        }
    }

    /// The same prior moved to a new location (mixtures shift every
    /// component).
    pub fn with_location(&self, location: f64) -> Result<Self> {
        finite("location", location)?;
        let delta = location - self.location;
        let mut out = self.clone();
        out.location = location;
        if let PriorKind::GaussianMixture { locations, .. } = &mut out.kind {
            for m in locations.iter_mut() {
                *m += delta;
            }
        }
        Ok(out)
    }

    /// Points where the prior concentrates: the location, or every mixture
    /// component centre. Used as quadrature break points.
    pub fn feature_points(&self) -> Vec<f64> {
        match &self.kind {
            PriorKind::GaussianMixture { locations, .. } => locations.clone(),
            _ => alloc::vec![self.location],
        }
    }

    /// ln π₀(θ); `+∞` at the horseshoe pole `θ = location`.
    pub fn ln_density(&self, theta: f64) -> Result<f64> {
        finite("theta", theta)?;
        let (mu, s) = (self.location, self.scale);
        let z = (theta - mu) / s;
        let v = match &self.kind {
            PriorKind::Gaussian => -0.5 * z * z - HALF_LN_2PI - ln(s),
            PriorKind::Laplace => -ln(2.0 * s) - abs(z),
            PriorKind::StudentT { df } => student_t_ln_norm(*df, s) - 0.5 * (df + 1.0) * ln_1p(z * z / df),
            PriorKind::Horseshoe => {
                if theta == mu {
                    f64::INFINITY
                } else {
                    scale_mixture::ln_density(scale_mixture::Mixing::Horseshoe, s, theta - mu, 0.0)?.0
                }
            }
            PriorKind::GaussianMixture { weights, locations, scales } => {
                let mut acc = f64::NEG_INFINITY;
                for ((w, m), sk) in weights.iter().zip(locations).zip(scales) {
                    let zk = (theta - m) / sk;
                    acc = crate::math::ln_add_exp(acc, ln(*w) - 0.5 * zk * zk - HALF_LN_2PI - ln(*sk));
                }
                acc
            }
            PriorKind::ImproperTilted { kappa } => -HALF_LN_2PI - ln(s) - kappa * z,
        };
        Ok(v)
    }

    /// π₀(θ); `+∞` at the horseshoe pole.
    pub fn density(&self, theta: f64) -> Result<f64> {
        Ok(exp(self.ln_density(theta)?))
    }
}

/// ln of the Student-t normalising constant `Γ((ν+1)/2) / (Γ(ν/2)·√(νπ)·s)`.
pub(crate) fn student_t_ln_norm(df: f64, scale: f64) -> f64 {
    lgamma(0.5 * (df + 1.0)) - lgamma(0.5 * df) - 0.5 * ln(df * PI) - ln(scale)
}
