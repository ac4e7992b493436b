//! Bracketed root finding for continuous sign-changing functions.

use crate::error::{Error, Result};
use crate::math::abs;
use crate::numerics::Tolerance;

/// An interval whose endpoint values have strictly opposite signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let opposite = (f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0);
        if !(lo < hi) || !opposite {
            return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and validates the result.
    pub fn from_fn<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::new(lo, hi, f_lo, f_hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo(&self) -> f64 {
        self.f_lo
    }

    pub fn f_hi(&self) -> f64 {
        self.f_hi
    }
}

/// Chandrupatla's method: inverse quadratic interpolation when the last three
/// points look locally quadratic, bisection otherwise. Iterates never leave the
/// initial bracket. Terminates once the bracket is narrower than
/// `abs_tol + rel_tol·|x|` or an exact zero is hit.
pub fn find_root_monotone<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, tol: Tolerance) -> Result<f64> {
    let (mut a, mut fa) = (bracket.hi, bracket.f_hi);
    let (mut b, mut fb) = (bracket.lo, bracket.f_lo);
    let (mut c, mut fc);
    let mut t = 0.5;

    for _ in 0..tol.max_iter {
        let xt = a + t * (b - a);
        let ft = f(xt);
        if !ft.is_finite() {
            return Err(Error::Domain { what: "root-finding objective", value: ft });
        }
        if (ft > 0.0) == (fa > 0.0) && ft != 0.0 {
            c = a;
            fc = fa;
        } else {
            c = b;
            fc = fb;
            b = a;
            fb = fa;
        }
        a = xt;
        fa = ft;

        let (xm, fm) = if abs(fa) < abs(fb) { (a, fa) } else { (b, fb) };
        if fm == 0.0 {
            return Ok(xm);
        }
        let width_tol = tol.abs_tol + tol.rel_tol * abs(xm) + 4.0 * f64::EPSILON * abs(xm);
        let tl = width_tol / abs(b - c);
        if tl > 0.5 {
            return Ok(xm);
        }

        let xi = (a - b) / (c - b);
        let phi = (fa - fb) / (fc - fb);
        t = if phi * phi < xi && (1.0 - phi) * (1.0 - phi) < 1.0 - xi {
            fa / (fb - fa) * fc / (fb - fc) + (c - a) / (b - a) * fa / (fc - fa) * fb / (fc - fb)
        } else {
            0.5
        };
        t = t.clamp(tl, 1.0 - tl);
    }
    Err(Error::NonConvergence { routine: "find_root_monotone", iterations: tol.max_iter })
}
