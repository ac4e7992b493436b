//! Seeded Monte Carlo quantile estimation.

use alloc::vec::Vec;
use rand::Rng;

use crate::error::{Error, Result};
use crate::math::{ceil, sqrt};

/// Smallest sample size accepted by the estimators.
pub const MIN_SAMPLES: usize = 100;

/// A sample quantile with an order-statistic standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// Empirical `level`-quantile (inverse empirical CDF) of `n_samples` draws.
pub fn mc_quantile<R, F>(rng: &mut R, sampler: F, level: f64, n_samples: usize) -> Result<f64>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> f64,
{
    Ok(mc_quantile_with_se(rng, sampler, level, n_samples)?.value)
}

/// As [`mc_quantile`], also reporting a standard error taken as half the
/// spread between the order statistics `√(n·p·(1−p))` ranks either side.
pub fn mc_quantile_with_se<R, F>(rng: &mut R, mut sampler: F, level: f64, n_samples: usize) -> Result<QuantileEstimate>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> f64,
{
    if n_samples < MIN_SAMPLES {
        return Err(Error::Domain { what: "n_samples", value: n_samples as f64 });
    }
    let mut draws: Vec<f64> = (0..n_samples).map(|_| sampler(rng)).collect();
    quantile_of(&mut draws, level)
}

/// Quantile and standard error of an explicit sample; sorts `samples`.
pub fn quantile_of(samples: &mut [f64], level: f64) -> Result<QuantileEstimate> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain { what: "quantile level", value: level });
    }
    if samples.is_empty() {
        return Err(Error::Domain { what: "n_samples", value: 0.0 });
    }
    if let Some(bad) = samples.iter().find(|v| v.is_nan()) {
        return Err(Error::Domain { what: "Monte Carlo draw", value: *bad });
    }
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len();
    let k = order_index(level, n);
    let m = ceil(sqrt(n as f64 * level * (1.0 - level))) as usize;
    let lo = k.saturating_sub(m);
    let hi = (k + m).min(n - 1);
    Ok(QuantileEstimate { value: samples[k], std_error: 0.5 * (samples[hi] - samples[lo]) })
}

fn order_index(level: f64, n: usize) -> usize {
    let k = ceil(level * n as f64) as usize;
    k.clamp(1, n) - 1
}
