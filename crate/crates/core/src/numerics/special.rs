//! Standard normal density, distribution and quantile functions.

use crate::error::{Error, Result};
use crate::math::{erfc, exp, ln, ln_1p, sqrt, HALF_LN_2PI, INV_SQRT_2PI, SQRT_2};

/// Standard normal density φ(x).
pub fn norm_pdf(x: f64) -> f64 {
    INV_SQRT_2PI * exp(-0.5 * x * x)
}

/// ln φ(x).
pub fn ln_norm_pdf(x: f64) -> f64 {
    -0.5 * x * x - HALF_LN_2PI
}

/// Standard normal distribution function Φ(x), through the complementary
/// error function so both tails keep full relative precision.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Upper tail 1 − Φ(x).
pub fn norm_sf(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

/// ln Φ(x), finite for every finite `x`.
pub fn ln_norm_cdf(x: f64) -> f64 {
    if x > 5.0 {
        ln_1p(-norm_sf(x))
    } else if x > -20.0 {
        ln(norm_cdf(x))
    } else {
        // Φ(x) = φ(t)·R(t) with t = −x and R the Mills ratio, evaluated by its
        // continued fraction 1/(t + 1/(t + 2/(t + ...))).
        let t = -x;
        let mut v = t;
        for k in (1..=60).rev() {
            v = t + k as f64 / v;
        }
        ln_norm_pdf(t) - ln(v)
    }
}

/// ln(1 − Φ(x)).
pub fn ln_norm_sf(x: f64) -> f64 {
    ln_norm_cdf(-x)
}

/// Φ(b) − Φ(a) for a ≤ b, evaluated on whichever tail avoids cancellation.
pub fn norm_interval(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        norm_sf(a) - norm_sf(b)
    } else if b <= 0.0 {
        norm_cdf(b) - norm_cdf(a)
    } else {
        1.0 - norm_cdf(a) - norm_sf(b)
    }
}

/// Standard normal quantile Φ⁻¹(p).
///
/// Wichura's AS 241 rational approximations followed by one Halley step
/// against [`norm_cdf`].
pub fn norm_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain { what: "p", value: p });
    }
    let q = p - 0.5;
    let mut x = if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        q * (((((((2_509.080_928_730_122_7 * r + 33_430.575_583_588_13) * r + 67_265.770_927_008_7) * r
            + 45_921.953_931_549_87)
            * r
            + 13_731.693_765_509_461)
            * r
            + 1_971.590_950_306_551_4)
            * r
            + 133.141_667_891_784_38)
            * r
            + 3.387_132_872_796_366_5)
            / (((((((5_226.495_278_852_546 * r + 28_729.085_735_721_943) * r + 39_307.895_800_092_71) * r
                + 21_213.794_301_586_597)
                * r
                + 5_394.196_021_424_751)
                * r
                + 687.187_007_492_057_9)
                * r
                + 42.313_330_701_600_91)
                * r
                + 1.0)
    } else {
        let tail = if q < 0.0 { p } else { 1.0 - p };
        let mut r = sqrt(-ln(tail));
        let v = if r <= 5.0 {
            r -= 1.6;
            (((((((7.745_450_142_783_414e-4 * r + 0.022_723_844_989_269_184) * r + 0.241_780_725_177_450_6) * r
                + 1.270_458_252_452_368_4)
                * r
                + 3.647_848_324_763_204_5)
                * r
                + 5.769_497_221_460_691)
                * r
                + 4.630_337_846_156_545)
                * r
                + 1.423_437_110_749_683_5)
                / (((((((1.050_750_071_644_416_9e-9 * r + 5.475_938_084_995_345e-4) * r
                    + 0.015_198_666_563_616_457)
                    * r
                    + 0.148_103_976_427_480_08)
                    * r
                    + 0.689_767_334_985_1)
                    * r
                    + 1.676_384_830_183_803_8)
                    * r
                    + 2.053_191_626_637_759)
                    * r
                    + 1.0)
        } else {
            r -= 5.0;
            (((((((2.010_334_399_292_288_1e-7 * r + 2.711_555_568_743_487_6e-5) * r + 0.001_242_660_947_388_078_4)
                * r
                + 0.026_532_189_526_576_124)
                * r
                + 0.296_560_571_828_504_9)
                * r
                + 1.784_826_539_917_291_3)
                * r
                + 5.463_784_911_164_114)
                * r
                + 6.657_904_643_501_103_5)
                / (((((((2.044_263_103_389_939_7e-15 * r + 1.421_511_758_316_446e-7) * r
                    + 1.846_318_317_510_054_8e-5)
                    * r
                    + 7.868_691_311_456_133e-4)
                    * r
                    + 0.014_875_361_290_850_615)
                    * r
                    + 0.136_929_880_922_735_8)
                    * r
                    + 0.599_832_206_555_888)
                    * r
                    + 1.0)
        };
        if q < 0.0 {
            -v
        } else {
            v
        }
    };
    // Halley polish on the side with the smaller tail probability.
    let (err, dens) = if x < 0.0 { (norm_cdf(x) - p, norm_pdf(x)) } else { ((1.0 - p) - norm_sf(x), norm_pdf(x)) };
    if dens > 0.0 {
        let u = err / dens;
        x -= u / (1.0 + 0.5 * x * u);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pdf_values() {
        assert!((norm_pdf(0.0) - 0.398_942_280_4).abs() < 1e-10);
        assert!((norm_pdf(1.0) - 0.241_970_724_5).abs() < 1e-10);
        for &x in &[0.3, 1.7, 4.2, 9.0] {
            assert_eq!(norm_pdf(x), norm_pdf(-x));
        }
    }

    #[test]
    fn cdf_values_and_symmetry() {
        assert_eq!(norm_cdf(0.0), 0.5);
        assert!((norm_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-13);
        assert!((norm_cdf(-1.96) - 0.024_997_895_148_220_43).abs() < 1e-13);
        let mut x = -8.0;
        while x <= 8.0 {
            assert!((norm_cdf(x) + norm_cdf(-x) - 1.0).abs() < 1e-12);
            assert!(norm_cdf(x + 0.01) >= norm_cdf(x));
            x += 0.01;
        }
    }

    #[test]
    fn log_cdf_tails() {
        // Continued fraction branch agrees with direct evaluation at the switch.
        let direct = ln(norm_cdf(-20.0));
        assert!((ln_norm_cdf(-20.0 - 1e-12) - direct).abs() < 1e-10);
        // Asymptotic form deep in the tail: −x²/2 − ln(−x) − ln√(2π) + O(x⁻²).
        let x = -500.0_f64;
        let approx = -0.5 * x * x - ln(-x) - HALF_LN_2PI - 1.0 / (x * x);
        assert!((ln_norm_cdf(x) - approx).abs() < 1e-9);
        assert!((ln_norm_cdf(8.0) - ln_1p(-norm_sf(8.0))).abs() < 1e-18);
    }

    #[test]
    fn quantile_values() {
        assert_eq!(norm_quantile(0.5).unwrap(), 0.0);
        assert!((norm_quantile(0.975).unwrap() - 1.959_963_985).abs() < 1e-9);
        assert!(norm_quantile(0.0).is_err());
        assert!(norm_quantile(1.0).is_err());
        let mut x = -6.0;
        while x <= 6.0 {
            let back = norm_quantile(norm_cdf(x)).unwrap();
            // p itself carries ~1e-16 absolute error, so the upper tail is
            // only recoverable to the default relative tolerance
            assert!((back - x).abs() < 1e-10 + 1e-8 * x.abs(), "x = {x}, back = {back}");
            x += 0.05;
        }
    }

    #[test]
    fn interval_mass() {
        assert!((norm_interval(-1.0, 1.0) - 0.682_689_492_137_085_9).abs() < 1e-14);
        assert!((norm_interval(8.0, 9.0) - (norm_sf(8.0) - norm_sf(9.0))).abs() < 1e-30);
    }
}
