//! Experiment drivers. Each returns plot-ready tables; rows are assembled in
//! a fixed order so reruns with the same configuration are byte-identical.

pub mod convergence;
pub mod coverage;
pub mod disconnected;
pub mod fig1;
pub mod pvalue;
pub mod volume;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::config::PriorSpec;
use crate::error::Result;

/// Generator for sub-task `stream` of a run seeded with `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `len` draws of `theta + sigma·ε`.
pub fn observations(rng: &mut ChaCha8Rng, theta: f64, sigma: f64, len: u64) -> Vec<f64> {
    (0..len).map(|_| theta + sigma * normal(rng)).collect()
}

/// One standard normal draw.
pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Maps `f` over `items` concurrently, keeping input order.
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync) -> Result<Vec<U>> {
    items.par_iter().map(&f).collect::<Vec<_>>().into_iter().collect()
}

pub fn gaussian(location: f64, scale: f64) -> PriorSpec {
    PriorSpec::new(crate::config::PriorKindSpec::Gaussian, location, scale)
}

pub fn laplace(location: f64, scale: f64) -> PriorSpec {
    PriorSpec::new(crate::config::PriorKindSpec::Laplace, location, scale)
}

pub fn horseshoe(location: f64, scale: f64) -> PriorSpec {
    PriorSpec::new(crate::config::PriorKindSpec::Horseshoe, location, scale)
}

/// The asymmetric two-component mixture with well-separated narrow modes at ±10.
pub fn separated_mixture() -> PriorSpec {
    PriorSpec::mixture(vec![0.8, 0.2], vec![-10.0, 10.0], vec![0.01, 0.01])
}
