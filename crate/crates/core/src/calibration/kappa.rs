use crate::error::{finite, Error, Result};
use crate::math::{abs, exp, expm1, ln, sqrt};
use crate::numerics::{find_root_monotone, norm_cdf, norm_pdf, norm_sf, Bracket, Tolerance};

/// Below this tilt the κ = 0 branch is used.
const KAPPA_ZERO: f64 = 1e-8;

/// The closed-form calibration `g̃_κ` of the tilted improper prior family,
/// which does not depend on the tested value. Only `|κ|` matters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaCalibration {
    kappa: f64,
}

impl KappaCalibration {
    pub fn new(kappa: f64) -> Result<Self> {
        Ok(Self { kappa: abs(finite("kappa", kappa)?) })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `g̃_κ` as a function of `s = √(2 ln x)`.
    pub fn g_of_s(&self, s: f64) -> f64 {
        let k = self.kappa;
        if k < KAPPA_ZERO {
            2.0 * norm_sf(s) + 2.0 * s * norm_pdf(s)
        } else {
            // φ(κ−s) − φ(κ+s) = φ(κ−s)·(1 − e^{−2κs})
            norm_sf(k + s) + norm_cdf(k - s) + norm_pdf(k - s) * -expm1(-2.0 * k * s) / k
        }
    }

    /// `g̃_κ(x)` for `x ≥ 1`.
    pub fn g_tilde(&self, x: f64) -> Result<f64> {
        if !(x >= 1.0) {
            return Err(Error::Domain { what: "x", value: x });
        }
        Ok(self.g_of_s(sqrt(2.0 * ln(x))))
    }

    /// `g̃_κ` at `x = e^{ln_x}`, saturating at one for `x ≤ 1`.
    pub fn g_tilde_ln(&self, ln_x: f64) -> f64 {
        if ln_x <= 0.0 {
            1.0
        } else {
            self.g_of_s(sqrt(2.0 * ln_x))
        }
    }

    /// The `s ≥ 0` with `g̃ = alpha`.
    pub fn s_inverse(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain { what: "alpha", value: alpha });
        }
        if alpha == 1.0 {
            return Ok(0.0);
        }
        let f = |s: f64| self.g_of_s(s) - alpha;
        let mut hi = 1.0;
        while f(hi) > 0.0 {
            hi *= 2.0;
            if hi > 1e3 {
                return Err(Error::BracketExpansion("g_tilde_inv"));
            }
        }
        if f(hi) == 0.0 {
            return Ok(hi);
        }
        let bracket = Bracket::new(0.0, hi, f(0.0), f(hi))?;
        find_root_monotone(f, bracket, Tolerance::new(1e-15, 1e-15, 200)?)
    }

    /// `ln g̃_κ⁻¹(alpha) = s²/2`.
    pub fn ln_inverse(&self, alpha: f64) -> Result<f64> {
        let s = self.s_inverse(alpha)?;
        Ok(0.5 * s * s)
    }

    /// `g̃_κ⁻¹(alpha) ≥ 1`.
    pub fn g_tilde_inv(&self, alpha: f64) -> Result<f64> {
        Ok(exp(self.ln_inverse(alpha)?))
    }
}
