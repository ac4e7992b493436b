use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::calibration::{CalibrationFn, KappaCalibration};
use crate::error::{finite, Error, Result};
use crate::math::{exp, sqrt};
use crate::model::{GaussianModel, SufficientStat};
use crate::numerics::montecarlo::quantile_of;
use crate::priors::{ln_marginal_value, Prior};

/// Smallest Monte Carlo sample accepted for Pratt quantities.
pub const MIN_PRATT_SAMPLES: usize = 10_000;

/// The prior actually mixed over when testing θ₀: improper tilts are
/// re-centred at the tested value.
fn local_prior(prior: &Prior, theta0: f64) -> Result<Prior> {
    if prior.is_proper() {
        Ok(prior.clone())
    } else {
        prior.with_location(theta0)
    }
}

/// ln Lₙ(ȳ, θ₀) = ln m̃ₙ(ȳ) − ln f̃ₙ,θ₀(ȳ).
pub fn ln_likelihood_ratio(prior: &Prior, model: &GaussianModel, stat: &SufficientStat, theta0: f64) -> Result<f64> {
    finite("theta0", theta0)?;
    let local;
    let p = if prior.is_proper() {
        prior
    } else {
        local = local_prior(prior, theta0)?;
        &local
    };
    let lm = ln_marginal_value(p, model, stat.n(), stat.ybar())?;
    Ok(lm - model.ln_mean_density(stat.n(), stat.ybar(), theta0))
}

/// `min(1, 1/Lₙ)`.
pub fn p_value_ville(prior: &Prior, model: &GaussianModel, stat: &SufficientStat, theta0: f64) -> Result<f64> {
    if !prior.is_proper() {
        return Err(Error::ImproperPrior);
    }
    let ln_l = ln_likelihood_ratio(prior, model, stat, theta0)?;
    Ok(if ln_l <= 0.0 { 1.0 } else { exp(-ln_l) })
}

/// Effective tilt, in units of 1/σ, of an improper prior under `model`.
pub(crate) fn effective_kappa(prior: &Prior, model: &GaussianModel) -> Option<f64> {
    prior.kappa().map(|k| k * model.sigma() / prior.scale())
}

/// `g_θ₀(Lₙ)`.
pub fn p_value_eville(prior: &Prior, model: &GaussianModel, stat: &SufficientStat, theta0: f64) -> Result<f64> {
    let ln_l = ln_likelihood_ratio(prior, model, stat, theta0)?;
    match effective_kappa(prior, model) {
        Some(k) => Ok(KappaCalibration::new(k)?.g_tilde_ln(ln_l)),
        None => CalibrationFn::new(prior, *model, theta0)?.g_ln(ln_l),
    }
}

/// The Pratt threshold `k_{n,θ₀}(α)`: the `(1 − α)` quantile of
/// `T = m̃ₙ(Ȳ)/f̃ₙ,θ₀(Ȳ)` when `Ȳ ~ N(θ₀, σ²/n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrattThreshold {
    pub ln_value: f64,
    pub value: f64,
    /// order-statistic standard error of `value`
    pub std_error: f64,
}

fn simulate_ln_t(
    prior: &Prior,
    model: &GaussianModel,
    n: u64,
    theta0: f64,
    n_mc: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if n_mc < MIN_PRATT_SAMPLES {
        return Err(Error::Domain { what: "n_mc", value: n_mc as f64 });
    }
    if n == 0 {
        return Err(Error::Domain { what: "n", value: 0.0 });
    }
    let sd = model.sigma() / sqrt(n as f64);
    let p = local_prior(prior, theta0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_mc)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            let y = theta0 + sd * z;
            Ok(ln_marginal_value(&p, model, n, y)? - model.ln_mean_density(n, y, theta0))
        })
        .collect()
}

/// Pratt thresholds for several levels from one shared simulation.
pub fn pratt_thresholds(
    prior: &Prior,
    model: &GaussianModel,
    n: u64,
    theta0: f64,
    alphas: &[f64],
    n_mc: usize,
    seed: u64,
) -> Result<Vec<PrattThreshold>> {
    let ln_t = simulate_ln_t(prior, model, n, theta0, n_mc, seed)?;
    let mut t: Vec<f64> = ln_t.iter().map(|&v| exp(v)).collect();
    let mut ln_sorted = ln_t;
    alphas
        .iter()
        .map(|&alpha| {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::Domain { what: "alpha", value: alpha });
            }
            let linear = quantile_of(&mut t, 1.0 - alpha)?;
            let ln_q = quantile_of(&mut ln_sorted, 1.0 - alpha)?;
            Ok(PrattThreshold { ln_value: ln_q.value, value: linear.value, std_error: linear.std_error })
        })
        .collect()
}

pub fn pratt_threshold(
    prior: &Prior,
    model: &GaussianModel,
    n: u64,
    theta0: f64,
    alpha: f64,
    n_mc: usize,
    seed: u64,
) -> Result<PrattThreshold> {
    Ok(pratt_thresholds(prior, model, n, theta0, &[alpha], n_mc, seed)?[0])
}

/// Pratt p-value: the simulated probability under θ₀ that `T` is at least
/// its observed value.
pub fn p_value_pratt(
    prior: &Prior,
    model: &GaussianModel,
    stat: &SufficientStat,
    theta0: f64,
    n_mc: usize,
    seed: u64,
) -> Result<f64> {
    let observed = ln_likelihood_ratio(prior, model, stat, theta0)?;
    let ln_t = simulate_ln_t(prior, model, stat.n(), theta0, n_mc, seed)?;
    let exceed = ln_t.iter().filter(|&&v| v >= observed).count();
    Ok(exceed as f64 / n_mc as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::norm_quantile;

    fn model() -> GaussianModel {
        GaussianModel::new(1.0).unwrap()
    }

    #[test]
    fn ville_saturates() {
        let p = Prior::gaussian(0.0, 1.0).unwrap();
        // L = 1/√2 at θ₀ = ȳ = 0
        assert_eq!(p_value_ville(&p, &model(), &SufficientStat::new(1, 0.0).unwrap(), 0.0).unwrap(), 1.0);
        let flat = Prior::improper_tilted(0.0, 0.0, 1.0).unwrap();
        assert_eq!(
            p_value_ville(&flat, &model(), &SufficientStat::new(1, 0.0).unwrap(), 0.0),
            Err(Error::ImproperPrior)
        );
    }

    #[test]
    fn flat_pratt_threshold_is_chi_square() {
        // T = exp(Z²/2): its (1−α) quantile is exp(q²/2), q the (1 − α/2)
        // normal quantile
        let flat = Prior::improper_tilted(0.0, 0.0, 1.0).unwrap();
        let alpha = 0.1;
        let k = pratt_threshold(&flat, &model(), 1, 0.3, alpha, 200_000, 7).unwrap();
        let q = norm_quantile(1.0 - alpha / 2.0).unwrap();
        let want = exp(0.5 * q * q);
        assert!((k.value - want).abs() < 3.0 * k.std_error + 1e-9, "{} vs {want} ± {}", k.value, k.std_error);
        assert!(k.std_error > 0.0);
    }

    #[test]
    fn pratt_is_reproducible() {
        let p = Prior::laplace(0.0, 1.0).unwrap();
        let a = pratt_threshold(&p, &model(), 1, 1.0, 0.1, 10_000, 3).unwrap();
        let b = pratt_threshold(&p, &model(), 1, 1.0, 0.1, 10_000, 3).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert!(pratt_threshold(&p, &model(), 1, 1.0, 0.1, 9_999, 3).is_err());
    }

    #[test]
    fn eville_at_most_ville() {
        let p = Prior::laplace(0.0, 1.0).unwrap();
        let stat = SufficientStat::new(3, 1.2).unwrap();
        for i in -20..=20 {
            let t = 1.2 + 0.15 * i as f64;
            let pv = p_value_ville(&p, &model(), &stat, t).unwrap();
            let pe = p_value_eville(&p, &model(), &stat, t).unwrap();
            assert!(pe <= pv + 1e-12, "θ₀={t}: {pe} > {pv}");
        }
    }

    #[test]
    fn improper_eville_uses_local_tilt() {
        let tilt = Prior::improper_tilted(2.0, 100.0, 1.0).unwrap();
        let stat = SufficientStat::new(4, 1.0).unwrap();
        let theta0 = 0.2;
        let ln_l = ln_likelihood_ratio(&tilt, &model(), &stat, theta0).unwrap();
        let n = 4.0_f64;
        let d = 1.0 - theta0;
        let want = -0.5 * crate::math::ln(n) - 2.0 * d + 4.0 / (2.0 * n) + n * d * d / 2.0;
        assert!((ln_l - want).abs() < 1e-12);
    }
}
