use crate::error::Result;
use crate::math::{exp, ln, ln_add_exp, sqrt, tanh, HALF_LN_2PI};
use crate::model::{GaussianModel, SufficientStat};
use crate::numerics::{integrate_line_with_breaks, ln_norm_cdf, Tolerance};
use crate::priors::scale_mixture::{self, Mixing};
use crate::priors::{Prior, PriorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalMethod {
    ClosedForm,
    Quadrature,
}

/// The marginal density `m̃ₙ(ȳ)` of the sample mean, kept on the log scale
/// because it underflows under strong prior–data conflict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalEval {
    /// ln m̃ₙ(ȳ)
    pub ln_value: f64,
    /// d/dȳ ln m̃ₙ(ȳ)
    pub score: f64,
    pub method: MarginalMethod,
}

impl MarginalEval {
    pub fn value(&self) -> f64 {
        exp(self.ln_value)
    }

    /// m̃′ₙ(ȳ)
    pub fn derivative(&self) -> f64 {
        self.value() * self.score
    }
}

fn ln_normal(d: f64, var: f64) -> f64 {
    -0.5 * d * d / var - HALF_LN_2PI - 0.5 * ln(var)
}

/// ln m̃ₙ(ȳ) and its derivative in ȳ, without packaging.
pub fn ln_marginal(prior: &Prior, model: &GaussianModel, n: u64, ybar: f64) -> Result<(f64, f64)> {
    let v0 = model.sigma() * model.sigma() / n as f64;
    let (mu, s) = (prior.location(), prior.scale());
    let d = ybar - mu;
    let out = match prior.kind() {
        PriorKind::Gaussian => {
            let v = v0 + s * s;
            (ln_normal(d, v), -d / v)
        }
        PriorKind::GaussianMixture { weights, locations, scales } => {
            let component = |k: usize| {
                let v = v0 + scales[k] * scales[k];
                let dk = ybar - locations[k];
                (ln(weights[k]) + ln_normal(dk, v), -dk / v)
            };
            let total = (0..weights.len()).fold(f64::NEG_INFINITY, |acc, k| ln_add_exp(acc, component(k).0));
            let score = (0..weights.len())
                .map(|k| {
                    let (lt, sc) = component(k);
                    exp(lt - total) * sc
                })
                .sum();
            (total, score)
        }
        PriorKind::Laplace => {
            let sd = sqrt(v0);
            let r = sd / s;
            let z = d / sd;
            let ln_a = -d / s + ln_norm_cdf(z - r);
            let ln_b = d / s + ln_norm_cdf(-z - r);
            (-ln(2.0 * s) + 0.5 * r * r + ln_add_exp(ln_a, ln_b), tanh(0.5 * (ln_b - ln_a)) / s)
        }
        PriorKind::StudentT { df } => scale_mixture::ln_density(Mixing::StudentT(*df), s, d, v0)?,
        PriorKind::Horseshoe => scale_mixture::ln_density(Mixing::Horseshoe, s, d, v0)?,
        PriorKind::ImproperTilted { kappa } => {
            let k = kappa / s;
            (-HALF_LN_2PI - ln(s) - k * d + 0.5 * k * k * v0, -k)
        }
    };
    Ok(out)
}

/// ln m̃ₙ(ȳ) alone, skipping the derivative integral for the scale mixtures.
pub fn ln_marginal_value(prior: &Prior, model: &GaussianModel, n: u64, ybar: f64) -> Result<f64> {
    let v0 = model.sigma() * model.sigma() / n as f64;
    let d = ybar - prior.location();
    match prior.kind() {
        PriorKind::StudentT { df } => scale_mixture::ln_density_value(Mixing::StudentT(*df), prior.scale(), d, v0),
        PriorKind::Horseshoe => scale_mixture::ln_density_value(Mixing::Horseshoe, prior.scale(), d, v0),
        _ => Ok(ln_marginal(prior, model, n, ybar)?.0),
    }
}

fn method_for(prior: &Prior) -> MarginalMethod {
    match prior.kind() {
        PriorKind::StudentT { .. } | PriorKind::Horseshoe => MarginalMethod::Quadrature,
        _ => MarginalMethod::ClosedForm,
    }
}

/// m̃ₙ(ȳ) = ∫ N(ȳ; θ, σ²/n) Π₀(dθ).
///
/// Closed forms for the Gaussian, mixture, Laplace and improper tilted priors;
/// the horseshoe and Student-t use one-dimensional quadrature over their
/// normal scale-mixture representation.
pub fn marginal(prior: &Prior, model: &GaussianModel, stat: &SufficientStat) -> Result<MarginalEval> {
    let (ln_value, score) = ln_marginal(prior, model, stat.n(), stat.ybar())?;
    Ok(MarginalEval { ln_value, score, method: method_for(prior) })
}

/// The marginal by direct quadrature over θ of likelihood × prior density,
/// with the derivative taken under the integral sign. Slower and less robust
/// than [`marginal`] at strong conflict; intended as a cross-check.
pub fn marginal_by_quadrature(
    prior: &Prior,
    model: &GaussianModel,
    stat: &SufficientStat,
    tol: Tolerance,
) -> Result<MarginalEval> {
    let (n, ybar) = (stat.n(), stat.ybar());
    let sd = model.mean_sd(n);
    let precision = n as f64 / (model.sigma() * model.sigma());
    let peak = model.ln_mean_density(n, ybar, ybar);
    let mut breaks = alloc::vec![ybar, ybar - 8.0 * sd, ybar + 8.0 * sd];
    for c in prior.feature_points() {
        breaks.extend([c, c - prior.scale(), c + prior.scale()]);
    }
    let weight = |theta: f64| -> f64 {
        let lp = prior.ln_density(theta).unwrap_or(f64::NEG_INFINITY);
        if lp == f64::INFINITY {
            return 0.0;
        }
        exp(model.ln_mean_density(n, ybar, theta) - peak + lp)
    };
    let scale = sd.min(prior.scale());
    let m = integrate_line_with_breaks(weight, &breaks, scale, tol)?;
    let dm = integrate_line_with_breaks(|t| (t - ybar) * precision * weight(t), &breaks, scale, tol)?;
    Ok(MarginalEval { ln_value: peak + ln(m.value), score: dm.value / m.value, method: MarginalMethod::Quadrature })
}

/// Tweedie's formula `ȳ + (σ²/n)·m̃′ₙ(ȳ)/m̃ₙ(ȳ)`.
pub fn posterior_mean(prior: &Prior, model: &GaussianModel, stat: &SufficientStat) -> Result<f64> {
    let (_, score) = ln_marginal(prior, model, stat.n(), stat.ybar())?;
    Ok(stat.ybar() + model.sigma() * model.sigma() / stat.n() as f64 * score)
}
