use alloc::vec::Vec;

use crate::calibration::KappaCalibration;
use crate::confseq::pvalue::{effective_kappa, p_value_eville};
use crate::confseq::{ConfidenceRegion, CsMethod, CsQuery};
use crate::error::{Error, Result};
use crate::math::{ln, sqrt};
use crate::model::{GaussianModel, SufficientStat};
use crate::numerics::{find_root_monotone, norm_quantile, Bracket, Tolerance};
use crate::priors::{ln_marginal_value, posterior_mean, PriorKind};

/// Uniform grid size for [`evcs_grid`].
pub const GRID_POINTS: usize = 2001;
/// Extra density of the pass around each membership change.
pub const REFINE_FACTOR: usize = 10;
/// Padding term of the improper-prior search window.
const IMPROPER_PAD: f64 = 40.0;

/// Which tail of the prior the data run off into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// ȳ → +∞
    Plus,
    /// ȳ → −∞
    Minus,
}

/// Builds the region the query's method asks for.
pub fn region(query: &CsQuery<'_>) -> Result<ConfidenceRegion> {
    match query.method() {
        CsMethod::Ville => vcs(query),
        CsMethod::EvilleGrid | CsMethod::EvilleBracket => evcs(query),
        CsMethod::ImproperClosedForm => {
            let kappa = effective_kappa(query.prior(), &query.model()).ok_or(Error::RequiresImproper)?;
            evcs_improper(kappa, query.model(), query.alpha(), query.stat())
        }
    }
}

/// `{θ : Lₙ(ȳ, θ) ≤ 1/α}` = `ȳ ± (σ/√n)·√(ln n − 2 ln α − ln(2πσ²) − 2 ln m̃ₙ(ȳ))`.
/// Proper priors only; the method field is not consulted.
pub fn vcs(query: &CsQuery<'_>) -> Result<ConfidenceRegion> {
    let prior = query.prior();
    if !prior.is_proper() {
        return Err(Error::ImproperPrior);
    }
    let (model, stat) = (query.model(), query.stat());
    let sigma = model.sigma();
    let n = stat.n() as f64;
    let lm = ln_marginal_value(prior, &model, stat.n(), stat.ybar())?;
    let arg = ln(n) - 2.0 * ln(query.alpha()) - ln(2.0 * crate::math::PI * sigma * sigma) - 2.0 * lm;
    centred(stat.ybar(), sigma / sqrt(n) * sqrt_or_nan(arg))
}

fn sqrt_or_nan(x: f64) -> f64 {
    if x >= 0.0 {
        sqrt(x)
    } else {
        f64::NAN
    }
}

fn centred(center: f64, half: f64) -> Result<ConfidenceRegion> {
    if half.is_nan() {
        Ok(ConfidenceRegion::empty())
    } else {
        ConfidenceRegion::interval(center - half, center + half)
    }
}

/// The VCS for a Gaussian prior `N(μ, τ²)`:
/// `ȳ ± (σ/√n)·√(ln(1 + nτ²/σ²) + (ȳ − μ)²/(σ²/n + τ²) − 2 ln α)`.
pub fn vcs_gaussian_closed_form(query: &CsQuery<'_>) -> Result<ConfidenceRegion> {
    let prior = query.prior();
    if prior.kind() != &PriorKind::Gaussian {
        return Err(Error::MethodMismatch("closed-form VCS needs a Gaussian prior"));
    }
    let (model, stat) = (query.model(), query.stat());
    let (sigma, tau) = (model.sigma(), prior.scale());
    let n = stat.n() as f64;
    let d = stat.ybar() - prior.location();
    let arg = crate::math::ln_1p(n * tau * tau / (sigma * sigma)) + d * d / (sigma * sigma / n + tau * tau)
        - 2.0 * ln(query.alpha());
    centred(stat.ybar(), sigma / sqrt(n) * sqrt_or_nan(arg))
}

/// Half-width `(σ/√n)·√(ln(n·g̃_κ⁻¹(α)²))` shared by the improper eVCS and
/// the limiting intervals.
pub fn improper_half_width(kappa: f64, model: GaussianModel, alpha: f64, n: u64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain { what: "alpha", value: alpha });
    }
    let ln_x = KappaCalibration::new(kappa)?.ln_inverse(alpha)?;
    Ok(model.mean_sd(n) * sqrt(ln(n as f64) + 2.0 * ln_x))
}

/// The eVCS of the tilted improper prior:
/// `ȳ − σκ/n ± (σ/√n)·√(ln(n·g̃_κ⁻¹(α)²))`.
pub fn evcs_improper(kappa: f64, model: GaussianModel, alpha: f64, stat: SufficientStat) -> Result<ConfidenceRegion> {
    let half = improper_half_width(kappa, model, alpha, stat.n())?;
    let center = stat.ybar() - model.sigma() * kappa / stat.n() as f64;
    ConfidenceRegion::interval(center - half, center + half)
}

/// The limit of the eVCS as the data run into the `direction` tail of a
/// prior with exponential rate κ: the improper eVCS with the tilt pointing
/// back toward the prior.
pub fn limiting_interval(
    kappa: f64,
    model: GaussianModel,
    alpha: f64,
    stat: SufficientStat,
    direction: Direction,
) -> Result<ConfidenceRegion> {
    let signed = match direction {
        Direction::Plus => kappa,
        Direction::Minus => -kappa,
    };
    evcs_improper(signed, model, alpha, stat)
}

/// The corresponding limit of the highest-posterior-density interval,
/// `ȳ ∓ σκ/n ± (σ/√n)·z_{1−α/2}`, for comparison with [`limiting_interval`].
pub fn hpd_limit_interval(
    kappa: f64,
    model: GaussianModel,
    alpha: f64,
    stat: SufficientStat,
    direction: Direction,
) -> Result<ConfidenceRegion> {
    let shift = model.sigma() * kappa / stat.n() as f64;
    let center = match direction {
        Direction::Plus => stat.ybar() - shift,
        Direction::Minus => stat.ybar() + shift,
    };
    let half = model.mean_sd(stat.n()) * norm_quantile(1.0 - 0.5 * alpha)?;
    ConfidenceRegion::interval(center - half, center + half)
}

/// The eVCS by the query's extended-Ville method. The bracket method falls
/// back to the grid if the posterior mean fails the membership test.
pub fn evcs(query: &CsQuery<'_>) -> Result<ConfidenceRegion> {
    match query.method() {
        CsMethod::EvilleGrid => evcs_grid(query, GRID_POINTS),
        CsMethod::EvilleBracket => match evcs_bracket_strict(query) {
            Err(Error::Internal(_)) => evcs_grid(query, GRID_POINTS),
            other => other,
        },
        _ => Err(Error::MethodMismatch("evcs needs an extended-Ville method")),
    }
}

/// The θ window scanned by the grid method.
pub fn search_window(query: &CsQuery<'_>) -> Result<(f64, f64)> {
    let (model, stat) = (query.model(), query.stat());
    if query.prior().is_proper() {
        return vcs(query)?.hull().ok_or(Error::Internal("empty VCS window"));
    }
    let kappa = effective_kappa(query.prior(), &model).ok_or(Error::RequiresImproper)?;
    // wide enough for the closed-form answer whatever κ and α are
    let s2 = 2.0 * KappaCalibration::new(kappa)?.ln_inverse(query.alpha())?;
    let n = stat.n() as f64;
    let half = model.mean_sd(stat.n()) * sqrt(ln(n) + IMPROPER_PAD.max(s2 + 4.0));
    let center = stat.ybar() - model.sigma() * kappa / n;
    Ok((center - half, center + half))
}

/// Grid evaluation of `p^eV(θ) ≥ α` over the enclosing window, with one
/// `REFINE_FACTOR`-times denser pass between every pair of neighbours whose
/// membership differs. Runs of members become intervals.
pub fn evcs_grid(query: &CsQuery<'_>, points: usize) -> Result<ConfidenceRegion> {
    if points < 2 {
        return Err(Error::Domain { what: "grid points", value: points as f64 });
    }
    let (lo, hi) = search_window(query)?;
    let (prior, model, stat, alpha) = (query.prior(), query.model(), query.stat(), query.alpha());
    let member = |t: f64| -> Result<bool> { Ok(p_value_eville(prior, &model, &stat, t)? >= alpha) };

    let step = (hi - lo) / (points - 1) as f64;
    let coarse: Vec<(f64, bool)> = (0..points)
        .map(|i| {
            let t = if i + 1 == points { hi } else { lo + step * i as f64 };
            Ok((t, member(t)?))
        })
        .collect::<Result<_>>()?;

    let mut fine: Vec<(f64, bool)> = Vec::with_capacity(coarse.len());
    for w in coarse.windows(2) {
        fine.push(w[0]);
        if w[0].1 != w[1].1 {
            let sub = (w[1].0 - w[0].0) / REFINE_FACTOR as f64;
            for k in 1..REFINE_FACTOR {
                let t = w[0].0 + sub * k as f64;
                fine.push((t, member(t)?));
            }
        }
    }
    fine.push(coarse[coarse.len() - 1]);
    runs_to_region(&fine)
}

fn runs_to_region(points: &[(f64, bool)]) -> Result<ConfidenceRegion> {
    let mut intervals = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    for &(t, inside) in points {
        open = match (open, inside) {
            (None, true) => Some((t, t)),
            (Some((a, _)), true) => Some((a, t)),
            (Some(run), false) => {
                intervals.push(run);
                None
            }
            (None, false) => None,
        };
    }
    if let Some(run) = open {
        intervals.push(run);
    }
    ConfidenceRegion::new(intervals)
}

/// Endpoints by root-finding `p^eV(θ) − α` on `[vcs.lo, PM]` and
/// `[PM, vcs.hi]`, where PM is the posterior mean. Returns
/// [`Error::Internal`] if PM is not a member.
pub fn evcs_bracket_strict(query: &CsQuery<'_>) -> Result<ConfidenceRegion> {
    let (prior, model, stat, alpha) = (query.prior(), query.model(), query.stat(), query.alpha());
    if !prior.is_proper() {
        return Err(Error::ImproperPrior);
    }
    let (lo, hi) = vcs(query)?.hull().ok_or(Error::Internal("empty VCS window"))?;
    let pm = posterior_mean(prior, &model, &stat)?;
    let f = |t: f64| p_value_eville(prior, &model, &stat, t).map(|p| p - alpha).unwrap_or(f64::NAN);
    let f_pm = f(pm);
    if !(f_pm >= 0.0) || !(lo <= pm && pm <= hi) {
        return Err(Error::Internal("posterior mean outside the eVCS"));
    }
    let tol = Tolerance::new(1e-9 * model.mean_sd(stat.n()), 1e-13, 200)?;
    let endpoint = |outer: f64| -> Result<f64> {
        let f_outer = f(outer);
        if f_outer.is_nan() {
            return Err(Error::Internal("non-finite p-value at the VCS boundary"));
        }
        if f_outer >= 0.0 {
            return Ok(outer);
        }
        if f_pm == 0.0 {
            return Ok(pm);
        }
        let bracket =
            if outer < pm { Bracket::new(outer, pm, f_outer, f_pm)? } else { Bracket::new(pm, outer, f_pm, f_outer)? };
        find_root_monotone(f, bracket, tol)
    };
    let left = endpoint(lo)?;
    let right = endpoint(hi)?;
    ConfidenceRegion::interval(left, right)
}
