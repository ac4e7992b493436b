//! Adaptive Gauss–Kronrod quadrature on finite, semi-infinite and infinite
//! ranges.
//!
//! Infinite ends are mapped onto a bounded parameter interval with a rational
//! substitution, then the 21-point Kronrod rule (embedded 10-point Gauss rule
//! for the error estimate) is applied with global adaptive bisection of the
//! worst panel. Callers that know where their integrand lives pass break
//! points so that narrow peaks are never straddled by a single panel.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::abs;

/// Absolute and relative error targets plus an iteration budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::InvalidTolerance("abs_tol must be positive"));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidTolerance("rel_tol must be positive"));
        }
        if max_iter == 0 {
            return Err(Error::InvalidTolerance("max_iter must be at least 1"));
        }
        Ok(Self { abs_tol, rel_tol, max_iter })
    }

    /// Same budget, different accuracy.
    pub const fn with_tols(self, abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, max_iter: self.max_iter }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-8, max_iter: 200 }
    }
}

/// Value of an integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_980_573,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// How a panel's parameter `t` maps to the integration variable `x`.
#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    /// x = origin + scale·t/(1 − t), t ∈ [0, 1)
    Upper {
        origin: f64,
        scale: f64,
    },
    /// x = origin − scale·(1 − t)/t, t ∈ (0, 1]
    Lower {
        origin: f64,
        scale: f64,
    },
    /// x = origin + scale·t/(1 − t²), t ∈ (−1, 1)
    Whole {
        origin: f64,
        scale: f64,
    },
}

impl Map {
    #[inline]
    fn apply(self, t: f64) -> (f64, f64) {
        match self {
            Map::Identity => (t, 1.0),
            Map::Upper { origin, scale } => {
                let d = 1.0 - t;
                (origin + scale * t / d, scale / (d * d))
            }
            Map::Lower { origin, scale } => (origin - scale * (1.0 - t) / t, scale / (t * t)),
            Map::Whole { origin, scale } => {
                let d = 1.0 - t * t;
                (origin + scale * t / d, scale * (1.0 + t * t) / (d * d))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    lo: f64,
    hi: f64,
    map: Map,
    value: [f64; N],
    error: [f64; N],
    floor: [f64; N],
}

fn kronrod21<const N: usize, F>(f: &mut F, lo: f64, hi: f64, map: Map) -> Panel<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut eval = |t: f64| -> [f64; N] {
        let (x, jac) = map.apply(t);
        let mut out = [0.0; N];
        if !x.is_finite() || !jac.is_finite() {
            return out;
        }
        let v = f(x);
        for i in 0..N {
            if v[i] != 0.0 {
                out[i] = v[i] * jac;
            }
        }
        out
    };

    let fc = eval(centre);
    let mut fv1 = [[0.0; N]; 10];
    let mut fv2 = [[0.0; N]; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        fv1[j] = eval(centre - dx);
        fv2[j] = eval(centre + dx);
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut floor = [0.0; N];
    for i in 0..N {
        let mut resk = WGK[10] * fc[i];
        let mut resg = 0.0;
        let mut resabs = abs(resk);
        for j in 0..10 {
            let sum = fv1[j][i] + fv2[j][i];
            resk += WGK[j] * sum;
            resabs += WGK[j] * (abs(fv1[j][i]) + abs(fv2[j][i]));
            if j % 2 == 1 {
                resg += WG[j / 2] * sum;
            }
        }
        let mean = 0.5 * resk;
        let mut resasc = WGK[10] * abs(fc[i] - mean);
        for j in 0..10 {
            resasc += WGK[j] * (abs(fv1[j][i] - mean) + abs(fv2[j][i] - mean));
        }
        let h = abs(half);
        resabs *= h;
        resasc *= h;
        let mut err = abs((resk - resg) * half);
        if resasc != 0.0 && err != 0.0 {
            err = resasc * crate::math::powf(200.0 * err / resasc, 1.5).min(1.0);
        }
        floor[i] = 50.0 * f64::EPSILON * resabs;
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(floor[i]);
        }
        value[i] = resk * half;
        error[i] = err;
    }
    Panel { lo, hi, map, value, error, floor }
}

/// Splits `[a, b]` (either end may be infinite) at the break points lying
/// strictly inside it and returns the mapped parameter panels.
fn initial_panels(a: f64, b: f64, breaks: &[f64], scale: f64) -> Vec<(f64, f64, Map)> {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|x| x.is_finite() && *x > a && *x < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut panels = Vec::new();
    let lower_inf = a == f64::NEG_INFINITY;
    let upper_inf = b == f64::INFINITY;

    if cuts.is_empty() {
        match (lower_inf, upper_inf) {
            (true, true) => panels.push((-1.0, 1.0, Map::Whole { origin: 0.0, scale })),
            (true, false) => panels.push((0.0, 1.0, Map::Lower { origin: b, scale })),
            (false, true) => panels.push((0.0, 1.0, Map::Upper { origin: a, scale })),
            (false, false) => panels.push((a, b, Map::Identity)),
        }
        return panels;
    }

    let first = cuts[0];
    let last = cuts[cuts.len() - 1];
    if lower_inf {
        panels.push((0.0, 1.0, Map::Lower { origin: first, scale }));
    } else {
        panels.push((a, first, Map::Identity));
    }
    for w in cuts.windows(2) {
        panels.push((w[0], w[1], Map::Identity));
    }
    if upper_inf {
        panels.push((0.0, 1.0, Map::Upper { origin: last, scale }));
    } else {
        panels.push((last, b, Map::Identity));
    }
    panels
}

/// Vector-valued adaptive quadrature over `[a, b]`; all components share the
/// same panels so related integrals (a density and its derivative, say) cost
/// one pass.
pub(crate) fn integrate_vec<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    scale: f64,
    tol: Tolerance,
) -> Result<([f64; N], [f64; N])>
where
    F: FnMut(f64) -> [f64; N],
{
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::Domain { what: "integration range", value: b - a });
    }
    let mut panels: Vec<Panel<N>> =
        initial_panels(a, b, breaks, scale).into_iter().map(|(lo, hi, map)| kronrod21(&mut f, lo, hi, map)).collect();

    let mut iterations = 0;
    loop {
        let mut value = [0.0; N];
        let mut error = [0.0; N];
        let mut floor = [0.0; N];
        for p in &panels {
            for i in 0..N {
                value[i] += p.value[i];
                error[i] += p.error[i];
                floor[i] += p.floor[i];
            }
        }
        if value.iter().chain(error.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonConvergence { routine: "quadrature", iterations });
        }
        // a component whose error is at the roundoff floor cannot improve
        let done = (0..N).all(|i| error[i] <= tol.abs_tol.max(tol.rel_tol * abs(value[i])).max(2.0 * floor[i]));
        if done {
            return Ok((value, error));
        }
        if iterations >= tol.max_iter {
            return Err(Error::NonConvergence { routine: "quadrature", iterations });
        }
        iterations += 1;

        // worst panel by excess over the roundoff floor, each component
        // measured against its own target
        let target: [f64; N] = core::array::from_fn(|i| tol.abs_tol.max(tol.rel_tol * abs(value[i])));
        let badness = |p: &Panel<N>| -> f64 { (0..N).map(|i| (p.error[i] - p.floor[i]).max(0.0) / target[i]).sum() };
        let (worst, _) = panels
            .iter()
            .enumerate()
            .map(|(k, p)| (k, badness(p)))
            .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if !(mid > p.lo && mid < p.hi) {
            // panel cannot be split further in floating point
            return Err(Error::NonConvergence { routine: "quadrature", iterations });
        }
        panels.push(kronrod21(&mut f, p.lo, mid, p.map));
        panels.push(kronrod21(&mut f, mid, p.hi, p.map));
    }
}

const EVALS_PER_PANEL: usize = 21;

fn scalar<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    scale: f64,
    tol: Tolerance,
) -> Result<Quadrature> {
    let mut count = 0usize;
    let (v, e) = integrate_vec::<1, _>(
        |x| {
            count += 1;
            [f(x)]
        },
        a,
        b,
        breaks,
        scale,
        tol,
    )?;
    debug_assert_eq!(count % EVALS_PER_PANEL, 0);
    Ok(Quadrature { value: v[0], abs_error: e[0], evaluations: count })
}

/// ∫ f over `[a, b]`; either limit may be infinite.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Quadrature> {
    scalar(f, a, b, &[], 1.0, tol)
}

/// ∫ f over the whole real line.
pub fn integrate_line<F: FnMut(f64) -> f64>(f: F, tol: Tolerance) -> Result<Quadrature> {
    scalar(f, f64::NEG_INFINITY, f64::INFINITY, &[], 1.0, tol)
}

/// ∫ f over the real line, split at `breaks`; `scale` sets the length unit of
/// the tail substitutions beyond the outermost break points.
pub fn integrate_line_with_breaks<F: FnMut(f64) -> f64>(
    f: F,
    breaks: &[f64],
    scale: f64,
    tol: Tolerance,
) -> Result<Quadrature> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain { what: "scale", value: scale });
    }
    scalar(f, f64::NEG_INFINITY, f64::INFINITY, breaks, scale, tol)
}

/// ∫ f over `[a, b]` split at `breaks`.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    scale: f64,
    tol: Tolerance,
) -> Result<Quadrature> {
    scalar(f, a, b, breaks, scale, tol)
}
