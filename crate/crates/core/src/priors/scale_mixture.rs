//! Normal scale mixtures `X | λ ~ N(0, v₀ + s²λ²)` for the horseshoe
//! (λ half-Cauchy) and the Student-t (λ⁻² ~ Gamma(ν/2, rate ν/2)).
//!
//! Integrals run over `u = ln λ`, where both mixing densities decay at least
//! exponentially and the integrand is smooth, so one adaptive pass handles
//! everything from the horseshoe pole to extreme prior–data conflict.

use crate::error::Result;
use crate::math::{abs, exp, lgamma, ln, ln_1p, LN_2, PI};
use crate::numerics::quadrature::integrate_vec;
use crate::numerics::{integrate_line_with_breaks, norm_sf, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Mixing {
    Horseshoe,
    StudentT(f64),
}

const TOL: Tolerance = Tolerance { abs_tol: 1e-15, rel_tol: 1e-9, max_iter: 300 };
const TAIL_SCALE: f64 = 2.0;

impl Mixing {
    /// Log density of `u = ln λ`.
    fn ln_weight(self, u: f64) -> f64 {
        match self {
            // 2/(π(1 + λ²)) · λ, written as a function of |u| to stay finite
            Mixing::Horseshoe => {
                let a = abs(u);
                ln(2.0 / PI) - a - ln_1p(exp(-2.0 * a))
            }
            // w = e^{−2u}: Gamma(ν/2, rate ν/2) density times |dw/du| = 2w
            Mixing::StudentT(nu) => {
                let half = 0.5 * nu;
                LN_2 + half * ln(half) - lgamma(half) - nu * u - half * exp(-2.0 * u)
            }
        }
    }
}

fn peaks(s: f64, d: f64, v0: f64) -> (f64, f64) {
    let spread = abs(d).max(crate::math::sqrt(v0));
    (0.0, ln(spread / s))
}

/// Integrates `[e^{h}, −e^{h}·d/v]` (or just the first entry when `N = 1`)
/// over `u`, returning the log-shift used and the raw integrals.
fn moments<const N: usize>(mixing: Mixing, s: f64, d: f64, v0: f64) -> Result<(f64, [f64; N])> {
    let h = |u: f64| -> (f64, f64) {
        let v = v0 + s * s * exp(2.0 * u);
        if !(v > 0.0 && v.is_finite()) {
            return (f64::NEG_INFINITY, 1.0);
        }
        (mixing.ln_weight(u) - 0.5 * ln(2.0 * PI * v) - 0.5 * d * d / v, v)
    };
    let (u0, u1) = peaks(s, d, v0);
    let shift = h(u0).0.max(h(u1).0).max(h(0.5 * (u0 + u1)).0);
    let breaks = [u0, u1, 0.5 * (u0 + u1), u1 - 2.0, u1 + 2.0];
    let (value, _) = integrate_vec::<N, _>(
        |u| {
            let (hu, v) = h(u);
            let e = exp(hu - shift);
            let mut out = [e; N];
            if N > 1 {
                out[1] = -e * d / v;
            }
            out
        },
        f64::NEG_INFINITY,
        f64::INFINITY,
        &breaks,
        TAIL_SCALE,
        TOL,
    )?;
    Ok((shift, value))
}

/// ln of the mixture density at `d` and its logarithmic derivative.
pub(crate) fn ln_density(mixing: Mixing, s: f64, d: f64, v0: f64) -> Result<(f64, f64)> {
    let (shift, value) = moments::<2>(mixing, s, d, v0)?;
    Ok((shift + ln(value[0]), value[1] / value[0]))
}

/// ln of the mixture density alone.
pub(crate) fn ln_density_value(mixing: Mixing, s: f64, d: f64, v0: f64) -> Result<f64> {
    let (shift, value) = moments::<1>(mixing, s, d, v0)?;
    Ok(shift + ln(value[0]))
}

/// `P(X > d)`.
pub(crate) fn survival(mixing: Mixing, s: f64, d: f64, v0: f64) -> Result<f64> {
    let (u0, u1) = peaks(s, d, v0);
    let q = integrate_line_with_breaks(
        |u| {
            let v = v0 + s * s * exp(2.0 * u);
            if !(v > 0.0) {
                return if d < 0.0 { exp(mixing.ln_weight(u)) } else { 0.0 };
            }
            exp(mixing.ln_weight(u)) * norm_sf(d / crate::math::sqrt(v))
        },
        &[u0, u1, u1 - 2.0, u1 + 2.0],
        TAIL_SCALE,
        TOL.with_tols(1e-14, 1e-10),
    )?;
    Ok(q.value)
}
