use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, exp, sqrt};
use crate::model::{GaussianModel, SufficientStat};
use crate::numerics::{find_root_monotone, ln_norm_cdf, norm_interval, norm_sf, Bracket, Tolerance};
use crate::priors::scale_mixture::{self, Mixing};
use crate::priors::{ln_marginal_value, Prior, PriorKind};

const GRID_LIMIT: usize = 20_000;

/// Prior-predictive tail probability `τₙ = ∫_{m̃ₙ(t) ≤ m̃ₙ(ȳ)} m̃ₙ(t) dt`.
///
/// Symmetric unimodal priors reduce to twice the predictive survival
/// function beyond `|ȳ − μ|`; mixtures locate the superlevel set of the
/// predictive density on a grid and subtract its mass.
pub fn conflict_index(prior: &Prior, model: &GaussianModel, stat: &SufficientStat) -> Result<f64> {
    if !prior.is_proper() {
        return Err(Error::ImproperPrior);
    }
    let v0 = model.sigma() * model.sigma() / stat.n() as f64;
    let (mu, s) = (prior.location(), prior.scale());
    let d = abs(stat.ybar() - mu);
    let tail = match prior.kind() {
        PriorKind::Gaussian => norm_sf(d / sqrt(v0 + s * s)),
        PriorKind::Laplace => {
            let sd = sqrt(v0);
            let (r, z) = (sd / s, d / sd);
            let a = exp(0.5 * r * r - d / s + ln_norm_cdf(z - r));
            let b = exp(0.5 * r * r + d / s + ln_norm_cdf(-z - r));
            norm_sf(z) + 0.5 * (a - b)
        }
        PriorKind::StudentT { df } => scale_mixture::survival(Mixing::StudentT(*df), s, d, v0)?,
        PriorKind::Horseshoe => scale_mixture::survival(Mixing::Horseshoe, s, d, v0)?,
        PriorKind::GaussianMixture { weights, locations, scales } => {
            return mixture_conflict(prior, model, stat, weights, locations, scales, v0);
        }
        PriorKind::ImproperTilted { .. } => unreachable!("rejected above"),
    };
    Ok((2.0 * tail).clamp(0.0, 1.0))
}

fn mixture_conflict(
    prior: &Prior,
    model: &GaussianModel,
    stat: &SufficientStat,
    weights: &[f64],
    locations: &[f64],
    scales: &[f64],
    v0: f64,
) -> Result<f64> {
    let n = stat.n();
    let level = ln_marginal_value(prior, model, n, stat.ybar())?;
    let excess = |t: f64| ln_marginal_value(prior, model, n, t).map(|l| l - level).unwrap_or(f64::NEG_INFINITY);

    let sds: Vec<f64> = scales.iter().map(|sk| sqrt(v0 + sk * sk)).collect();
    let widest = sds.iter().copied().fold(0.0, f64::max);
    let narrowest = sds.iter().copied().fold(f64::INFINITY, f64::min);
    // every component density at distance `reach` is below its value at ȳ
    let reach = locations.iter().map(|m| abs(stat.ybar() - m)).fold(0.0, f64::max) * widest / narrowest + 12.0 * widest;
    let lo = locations.iter().copied().fold(f64::INFINITY, f64::min) - reach;
    let hi = locations.iter().copied().fold(f64::NEG_INFINITY, f64::max) + reach;
    let points = (((hi - lo) / (0.25 * narrowest)) as usize).clamp(200, GRID_LIMIT);
    let step = (hi - lo) / points as f64;

    // crossings of the level, refined to roots
    let tol = Tolerance::new(1e-12 * widest, 1e-14, 200)?;
    let mut edges = Vec::new();
    let mut prev_t = lo;
    let mut prev = excess(lo);
    for i in 1..=points {
        let t = lo + step * i as f64;
        let cur = excess(t);
        if (prev > 0.0) != (cur > 0.0) {
            let root = match Bracket::new(prev_t, t, prev, cur) {
                Ok(b) => find_root_monotone(excess, b, tol)?,
                Err(_) => {
                    if prev == 0.0 {
                        prev_t
                    } else {
                        t
                    }
                }
            };
            edges.push(root);
        }
        prev_t = t;
        prev = cur;
    }
    if edges.len() % 2 == 1 {
        return Err(Error::Internal("unbalanced level-set crossings"));
    }
    let mass = |a: f64, b: f64| -> f64 {
        weights.iter().zip(locations).zip(&sds).map(|((w, m), sd)| w * norm_interval((a - m) / sd, (b - m) / sd)).sum()
    };
    let inside: f64 = edges.chunks(2).map(|e| mass(e[0], e[1])).sum();
    Ok((1.0 - inside).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_line_with_breaks, norm_cdf};
    use crate::priors::ln_marginal;
    use alloc::vec;

    fn model() -> GaussianModel {
        GaussianModel::new(1.0).unwrap()
    }

    #[test]
    fn gaussian_two_sided_tail() {
        let p = Prior::gaussian(0.0, 1.0).unwrap();
        for &z in &[0.0, 0.5, 2.0, 5.0] {
            let c = conflict_index(&p, &model(), &SufficientStat::new(1, z).unwrap()).unwrap();
            assert!((c - 2.0 * (1.0 - norm_cdf(z / crate::math::SQRT_2))).abs() < 1e-12);
        }
    }

    #[test]
    fn one_at_prior_location_and_decreasing() {
        let priors = [
            Prior::gaussian(1.0, 1.0).unwrap(),
            Prior::laplace(1.0, 0.5).unwrap(),
            Prior::student_t(5.0, 1.0, 1.0).unwrap(),
            Prior::horseshoe(1.0, 1.0).unwrap(),
        ];
        for p in &priors {
            let at = conflict_index(p, &model(), &SufficientStat::new(3, 1.0).unwrap()).unwrap();
            assert!((at - 1.0).abs() < 1e-9, "{:?}", p.kind());
            let mut last = at;
            for &d in &[0.2, 1.0, 3.0, 10.0, 40.0] {
                let c = conflict_index(p, &model(), &SufficientStat::new(3, 1.0 + d).unwrap()).unwrap();
                assert!(c < last, "{:?} d={d}", p.kind());
                last = c;
            }
        }
    }

    #[test]
    fn matches_direct_tail_integral() {
        for p in [
            Prior::laplace(0.0, 0.7).unwrap(),
            Prior::horseshoe(0.0, 1.0).unwrap(),
            Prior::student_t(3.0, 0.0, 1.0).unwrap(),
        ] {
            let stat = SufficientStat::new(2, 2.5).unwrap();
            let m = |t: f64| exp(ln_marginal(&p, &model(), 2, t).unwrap().0);
            let tol = Tolerance::new(1e-12, 1e-10, 300).unwrap();
            let all = integrate_line_with_breaks(m, &[-2.5, 0.0, 2.5], 1.0, tol).unwrap().value;
            let upper = crate::numerics::integrate(m, 2.5, f64::INFINITY, tol).unwrap().value;
            let c = conflict_index(&p, &model(), &stat).unwrap();
            assert!((all - 1.0).abs() < 1e-8);
            assert!((c - 2.0 * upper).abs() < 1e-8, "{:?}: {c} vs {}", p.kind(), 2.0 * upper);
        }
    }

    #[test]
    fn mixture_level_set() {
        let p = Prior::gaussian_mixture(vec![0.5, 0.5], vec![-5.0, 5.0], vec![1.0, 1.0]).unwrap();
        // symmetric two-component case: ȳ at a mode leaves only the mass
        // below the matching height
        let c = conflict_index(&p, &model(), &SufficientStat::new(1, 0.0).unwrap()).unwrap();
        assert!(c > 0.0 && c < 1.0);
        let far = conflict_index(&p, &model(), &SufficientStat::new(1, 30.0).unwrap()).unwrap();
        assert!(far < 1e-12);
        // one-component mixture reduces to the Gaussian answer
        let one = Prior::gaussian_mixture(vec![1.0], vec![0.0], vec![1.0]).unwrap();
        let g = Prior::gaussian(0.0, 1.0).unwrap();
        let stat = SufficientStat::new(1, 1.7).unwrap();
        let a = conflict_index(&one, &model(), &stat).unwrap();
        let b = conflict_index(&g, &model(), &stat).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn improper_is_rejected() {
        let p = Prior::improper_tilted(0.0, 0.0, 1.0).unwrap();
        assert_eq!(conflict_index(&p, &model(), &SufficientStat::new(1, 0.0).unwrap()), Err(Error::ImproperPrior));
    }
}
