//! Calibration of the mixture likelihood ratio under the extended Ville
//! inequality.
//!
//! For a tested value θ₀, `g_θ₀(c) = E_θ₀[min(L₁/c, 1)]` with
//! `L₁(y) = m̃₁(y)/f̃₁,θ₀(y)`. Tweedie's formula gives
//! `d/dy ln L₁(y) = (E[θ | y] − θ₀)/σ²`, and the posterior mean is
//! nondecreasing in `y`, so `ln L₁` is quasi-convex: it falls to its minimum
//! `ln c*` where the posterior mean equals θ₀ and rises afterwards. Hence
//! `{L₁ < c}` is a single interval `(a, b)` and
//!
//! `g_θ₀(c) = Φ((a−θ₀)/σ) + Φ̄((b−θ₀)/σ) + (1/c)·∫ₐᵇ m̃₁(y) dy`.
//!
//! Everything is computed in `ln c`, because under strong conflict `c*` is
//! far below the smallest positive double.

mod kappa;

use alloc::vec::Vec;

pub use kappa::KappaCalibration;

use crate::error::{finite, Error, Result};
use crate::math::{exp, ln, LN_2};
use crate::model::GaussianModel;
use crate::numerics::{find_root_monotone, integrate_with_breaks, norm_cdf, norm_sf, Bracket, Tolerance};
use crate::priors::{ln_marginal, ln_marginal_value, Prior};

/// Doublings allowed when searching outward for a sign change in `y`.
const MAX_DOUBLINGS: u32 = 64;
/// Upper limit on `c / c*` when bracketing the inverse of an improper
/// calibration.
const LN_EXPANSION_CAP: f64 = 69.077_552_789_821_37; // ln 1e30

/// `g_θ₀` for a fixed prior, model and tested value.
///
/// Improper tilted priors are re-centred at θ₀, so their calibration is
/// `g̃_κ` whatever θ₀ is.
#[derive(Debug, Clone)]
pub struct CalibrationFn {
    prior: Prior,
    model: GaussianModel,
    theta0: f64,
    /// minimiser of `ln L₁`, absent when `ln L₁` is monotone
    y_star: Option<f64>,
    ln_c_star: f64,
    /// direction in which `ln L₁` decreases when it is monotone
    falling_right: bool,
    tol: Tolerance,
}

impl CalibrationFn {
    pub fn new(prior: &Prior, model: GaussianModel, theta0: f64) -> Result<Self> {
        Self::with_tolerance(prior, model, theta0, Tolerance::new(1e-12, 1e-10, 200)?)
    }

    /// `tol` governs the quadrature of the saturated part of `g`.
    pub fn with_tolerance(prior: &Prior, model: GaussianModel, theta0: f64, tol: Tolerance) -> Result<Self> {
        finite("theta0", theta0)?;
        let prior = if prior.is_proper() { prior.clone() } else { prior.with_location(theta0)? };
        let mut cal =
            Self { prior, model, theta0, y_star: None, ln_c_star: f64::NEG_INFINITY, falling_right: true, tol };
        cal.locate_minimum()?;
        Ok(cal)
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn prior(&self) -> &Prior {
        &self.prior
    }

    pub fn model(&self) -> GaussianModel {
        self.model
    }

    /// ln L₁(y, θ₀).
    pub fn ln_ratio(&self, y: f64) -> Result<f64> {
        Ok(ln_marginal_value(&self.prior, &self.model, 1, y)? - self.model.ln_mean_density(1, y, self.theta0))
    }

    /// `σ²·d/dy ln L₁ = E[θ | y] − θ₀`.
    fn drift(&self, y: f64) -> Result<f64> {
        let sigma2 = self.model.sigma() * self.model.sigma();
        let (_, score) = ln_marginal(&self.prior, &self.model, 1, y)?;
        Ok(y + sigma2 * score - self.theta0)
    }

    fn locate_minimum(&mut self) -> Result<()> {
        let sigma = self.model.sigma();
        let d0 = self.drift(self.theta0)?;
        if d0 == 0.0 {
            self.y_star = Some(self.theta0);
            self.ln_c_star = self.ln_ratio(self.theta0)?;
            return Ok(());
        }
        // the root lies on the side where the drift changes sign
        let dir = if d0 > 0.0 { -1.0 } else { 1.0 };
        let mut near = (self.theta0, d0);
        let mut step = sigma;
        for _ in 0..MAX_DOUBLINGS {
            let y = self.theta0 + dir * step;
            let d = self.drift(y)?;
            if d == 0.0 {
                self.y_star = Some(y);
                self.ln_c_star = self.ln_ratio(y)?;
                return Ok(());
            }
            if (d > 0.0) != (d0 > 0.0) {
                let (lo, hi, f_lo, f_hi) = if dir > 0.0 { (near.0, y, near.1, d) } else { (y, near.0, d, near.1) };
                let bracket = Bracket::new(lo, hi, f_lo, f_hi)?;
                let tol = Tolerance::new(1e-12 * sigma, 1e-14, 200)?;
                let root = find_root_monotone(|t| self.drift(t).unwrap_or(f64::NAN), bracket, tol)?;
                self.y_star = Some(root);
                self.ln_c_star = self.ln_ratio(root)?;
                return Ok(());
            }
            near = (y, d);
            step *= 2.0;
        }
        // drift never changes sign: ln L₁ is monotone and unbounded below
        self.falling_right = d0 < 0.0;
        Ok(())
    }

    /// Where the posterior mean equals θ₀, if anywhere.
    pub fn y_star(&self) -> Option<f64> {
        self.y_star
    }

    /// ln c*, the infimum of ln L₁ (−∞ when L₁ is unbounded below).
    pub fn ln_c_star(&self) -> f64 {
        self.ln_c_star
    }

    /// c*, the infimum of the support of L₁ under θ₀.
    pub fn c_star(&self) -> f64 {
        exp(self.ln_c_star)
    }

    /// A point with `ln L₁ < ln_c`, given `ln_c > ln c*`.
    fn interior_point(&self, ln_c: f64) -> Result<f64> {
        if let Some(y) = self.y_star {
            return Ok(y);
        }
        let dir = if self.falling_right { 1.0 } else { -1.0 };
        let mut step = self.model.sigma();
        for _ in 0..MAX_DOUBLINGS {
            let y = self.theta0 + dir * step;
            if self.ln_ratio(y)? < ln_c {
                return Ok(y);
            }
            step *= 2.0;
        }
        Err(Error::BracketExpansion("calibration interior point"))
    }

    /// The end of `{ln L₁ < ln_c}` on one side of `inside`; infinite when
    /// the ratio never climbs back to `ln_c` within the search range.
    fn level_crossing(&self, inside: f64, ln_c: f64, dir: f64) -> Result<f64> {
        let sigma = self.model.sigma();
        let f = |y: f64| self.ln_ratio(y).map(|v| v - ln_c).unwrap_or(f64::NAN);
        let f_in = f(inside);
        let mut near = inside;
        let mut step = sigma;
        for _ in 0..MAX_DOUBLINGS {
            let y = inside + dir * step;
            let fy = f(y);
            if fy.is_nan() {
                return Err(Error::Internal("non-finite likelihood ratio"));
            }
            if fy == 0.0 {
                return Ok(y);
            }
            if fy > 0.0 {
                let f_near = if near == inside { f_in } else { f(near) };
                let (lo, hi, f_lo, f_hi) = if dir > 0.0 { (near, y, f_near, fy) } else { (y, near, fy, f_near) };
                let bracket = Bracket::new(lo, hi, f_lo, f_hi)?;
                // g is flat to first order in the crossing location
                let tol = Tolerance::new(1e-9 * sigma, 1e-12, 200)?;
                return find_root_monotone(f, bracket, tol);
            }
            near = y;
            step *= 2.0;
        }
        if (dir > 0.0) == self.falling_right && self.y_star.is_none() {
            Ok(dir * f64::INFINITY)
        } else {
            Err(Error::BracketExpansion("calibration level set"))
        }
    }

    /// `g_θ₀(e^{ln_c})`.
    pub fn g_ln(&self, ln_c: f64) -> Result<f64> {
        if ln_c.is_nan() {
            return Err(Error::Domain { what: "ln c", value: ln_c });
        }
        if ln_c <= self.ln_c_star {
            return Ok(1.0);
        }
        if ln_c == f64::INFINITY {
            return Ok(0.0);
        }
        let inside = self.interior_point(ln_c)?;
        let a = self.level_crossing(inside, ln_c, -1.0)?;
        let b = self.level_crossing(inside, ln_c, 1.0)?;
        let sigma = self.model.sigma();
        let mut breaks: Vec<f64> = alloc::vec![inside, self.theta0];
        breaks.extend(self.prior.feature_points());
        let q = integrate_with_breaks(
            |y| {
                let lm = ln_marginal_value(&self.prior, &self.model, 1, y).unwrap_or(f64::NAN);
                exp(lm - ln_c)
            },
            a,
            b,
            &breaks,
            sigma,
            self.tol,
        )?;
        let outside = norm_cdf((a - self.theta0) / sigma) + norm_sf((b - self.theta0) / sigma);
        Ok((q.value + outside).clamp(0.0, 1.0))
    }

    /// `g_θ₀(c)`.
    pub fn g_theta(&self, c: f64) -> Result<f64> {
        if !(c > 0.0) {
            return Err(Error::Domain { what: "c", value: c });
        }
        self.g_ln(ln(c))
    }

    /// `ln g_θ₀⁻¹(alpha)`.
    ///
    /// For proper priors `g_θ₀(1/α) ≤ α`, so the root lies in
    /// `(ln c*, −ln α]`; improper calibrations expand upward from `ln c*` in
    /// steps of `ln 4`.
    pub fn ln_inverse(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain { what: "alpha", value: alpha });
        }
        let f = |lc: f64| self.g_ln(lc).map(|g| g - alpha).unwrap_or(f64::NAN);
        let hi = if self.prior.is_proper() {
            -ln(alpha)
        } else {
            let step = 2.0 * LN_2;
            let mut hi = self.ln_c_star + step;
            while f(hi) > 0.0 {
                hi += step;
                if hi > self.ln_c_star + LN_EXPANSION_CAP {
                    return Err(Error::BracketExpansion("g_theta_inv"));
                }
            }
            hi
        };
        let f_hi = f(hi);
        if f_hi == 0.0 {
            return Ok(hi);
        }
        let mut lo = if self.ln_c_star.is_finite() { self.ln_c_star } else { hi - 1.0 };
        let mut f_lo = f(lo);
        let mut width = 1.0;
        while f_lo <= 0.0 && !self.ln_c_star.is_finite() {
            width *= 2.0;
            lo = hi - width;
            f_lo = f(lo);
            if width > 1e6 {
                return Err(Error::BracketExpansion("g_theta_inv"));
            }
        }
        let bracket = Bracket::new(lo, hi, f_lo, f_hi)?;
        find_root_monotone(f, bracket, Tolerance::new(1e-11, 1e-13, 200)?)
    }

    /// `g_θ₀⁻¹(alpha)`, the threshold the eVCS applies to `L_n` at θ₀.
    pub fn g_theta_inv(&self, alpha: f64) -> Result<f64> {
        Ok(exp(self.ln_inverse(alpha)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn model() -> GaussianModel {
        GaussianModel::new(1.0).unwrap()
    }

    fn catalogue() -> Vec<Prior> {
        vec![
            Prior::gaussian(0.0, 1.0).unwrap(),
            Prior::laplace(0.0, 1.0).unwrap(),
            Prior::student_t(5.0, 0.0, 1.0).unwrap(),
            Prior::horseshoe(0.0, 1.0).unwrap(),
            Prior::gaussian_mixture(vec![0.8, 0.2], vec![-10.0, 10.0], vec![0.01, 0.01]).unwrap(),
        ]
    }

    #[test]
    fn improper_matches_closed_form() {
        for &k in &[0.0, 0.5, 2.0] {
            let prior = Prior::improper_tilted(k, 0.0, 1.0).unwrap();
            let kc = KappaCalibration::new(k).unwrap();
            for &theta0 in &[0.0, 3.7, -40.0] {
                let cal = CalibrationFn::new(&prior, model(), theta0).unwrap();
                assert!(cal.ln_c_star().abs() < 1e-12);
                for &c in &[1.0, 2.0, 10.0, 1e3, 1e6] {
                    let a = cal.g_theta(c).unwrap();
                    let b = kc.g_tilde(c).unwrap();
                    assert!((a - b).abs() < 1e-8, "κ={k} θ₀={theta0} c={c}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn c_star_for_flat_prior_is_one() {
        let cal = CalibrationFn::new(&Prior::improper_tilted(0.0, 5.0, 1.0).unwrap(), model(), 2.0).unwrap();
        assert!((cal.c_star() - 1.0).abs() < 1e-12);
        assert!((cal.y_star().unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_minimum_at_prior_mean() {
        let cal = CalibrationFn::new(&Prior::gaussian(0.0, 1.0).unwrap(), model(), 0.0).unwrap();
        assert!(cal.y_star().unwrap().abs() < 1e-12);
        // L₁(0) = √(σ²/(σ²+τ²))
        assert!((cal.ln_c_star() - 0.5 * ln(0.5)).abs() < 1e-12);
    }

    #[test]
    fn saturation_and_decay() {
        for p in catalogue() {
            for &theta0 in &[0.0, 1.0, -3.0, 10.0] {
                let cal = CalibrationFn::new(&p, model(), theta0).unwrap();
                assert_eq!(cal.g_ln(cal.ln_c_star() - 0.1).unwrap(), 1.0);
                assert!(cal.g_theta(1e8).unwrap() < 1e-3, "{:?}", p.kind());
                let mut last = 1.0;
                for i in 0..30 {
                    let lc = cal.ln_c_star().max(-30.0) + 0.25 * i as f64;
                    let g = cal.g_ln(lc).unwrap();
                    assert!(g <= last + 1e-9 && g > 0.0 && g <= 1.0);
                    last = g;
                }
            }
        }
    }

    #[test]
    fn inverse_identity_and_bounds() {
        for p in catalogue() {
            for &theta0 in &[0.0, 2.0, -10.0] {
                let cal = CalibrationFn::new(&p, model(), theta0).unwrap();
                for &a in &[0.05, 0.1, 0.5] {
                    let c = cal.g_theta_inv(a).unwrap();
                    assert!((cal.g_theta(c).unwrap() - a).abs() < 1e-6);
                    assert!(c <= 1.0 / a * (1.0 + 1e-12));
                    assert!(c >= cal.c_star());
                }
            }
        }
    }

    #[test]
    fn expectation_identity() {
        // E_θ₀[L₁] = 1 for proper priors, so g(c) → 1/c·(1 − small) and
        // c·g(c) → 1 as c → ∞
        let cal = CalibrationFn::new(&Prior::laplace(0.0, 1.0).unwrap(), model(), 0.5).unwrap();
        let c = 1e12;
        assert!((c * cal.g_theta(c).unwrap() - 1.0).abs() < 1e-3);
    }
}
