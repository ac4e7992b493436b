use crate::math::{abs, exp, powf, sqrt, PI};
use crate::model::GaussianModel;
use crate::priors::{student_t_ln_norm, Prior, PriorKind};

/// Tail behaviour `π₀(θ) ~ C₁·(2πσ²)^{-1/2}·|θ/σ|^{-β}·e^{-κ|θ|/σ}` as
/// `|θ| → ∞`, with θ measured from the prior location and κ in units of 1/σ.
///
/// `known` is false for priors outside this family (Gaussian, mixtures).
/// For the horseshoe the rate and exponent are known but `c1` is not
/// recorded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProfile {
    pub kappa: Option<f64>,
    pub beta: Option<f64>,
    pub c1: Option<f64>,
    pub known: bool,
}

impl TailProfile {
    const UNKNOWN: Self = Self { kappa: None, beta: None, c1: None, known: false };

    /// Polynomial or exponential tails, the bounded-influence case.
    pub fn is_bounded_influence(&self) -> bool {
        match (self.known, self.kappa, self.beta) {
            (true, Some(k), Some(b)) => k > 0.0 || b > 1.0,
            _ => false,
        }
    }
}

pub fn tail_profile(prior: &Prior, model: &GaussianModel) -> TailProfile {
    let sigma = model.sigma();
    let s = prior.scale();
    let sqrt_2pi_sigma = sqrt(2.0 * PI) * sigma;
    match prior.kind() {
        PriorKind::Gaussian | PriorKind::GaussianMixture { .. } => TailProfile::UNKNOWN,
        PriorKind::Laplace => {
            TailProfile { kappa: Some(sigma / s), beta: Some(0.0), c1: Some(sqrt_2pi_sigma / (2.0 * s)), known: true }
        }
        PriorKind::StudentT { df } => {
            let beta = df + 1.0;
            let k = exp(student_t_ln_norm(*df, s));
            TailProfile {
                kappa: Some(0.0),
                beta: Some(beta),
                c1: Some(sqrt_2pi_sigma * k * powf(*df, 0.5 * beta) * powf(s / sigma, beta)),
                known: true,
            }
        }
        PriorKind::Horseshoe => TailProfile { kappa: Some(0.0), beta: Some(2.0), c1: None, known: true },
        PriorKind::ImproperTilted { kappa } => {
            TailProfile { kappa: Some(abs(*kappa) * sigma / s), beta: Some(0.0), c1: Some(sigma / s), known: true }
        }
    }
}
