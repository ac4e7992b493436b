use crate::error::{finite, Error, Result};
use crate::math::{ln, sqrt, HALF_LN_2PI};

/// Observations `Yᵢ ~ N(θ, σ²)` with known standard deviation `σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel {
    sigma: f64,
}

impl GaussianModel {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain { what: "sigma", value: sigma });
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Standard deviation of the sample mean after `n` observations.
    pub fn mean_sd(&self, n: u64) -> f64 {
        self.sigma / sqrt(n as f64)
    }

    /// Log density of `Ȳₙ = ybar` when the mean is `theta`.
    pub fn ln_mean_density(&self, n: u64, ybar: f64, theta: f64) -> f64 {
        let s = self.mean_sd(n);
        let z = (ybar - theta) / s;
        -0.5 * z * z - HALF_LN_2PI - ln(s)
    }
}

/// The running count and sample mean; all confidence sequences here depend
/// on the data only through this pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientStat {
    n: u64,
    ybar: f64,
}

impl SufficientStat {
    pub fn new(n: u64, ybar: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain { what: "n", value: 0.0 });
        }
        finite("ybar", ybar)?;
        Ok(Self { n, ybar })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ybar(&self) -> f64 {
        self.ybar
    }

    /// Same count, sample mean moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Result<Self> {
        Self::new(self.n, self.ybar + delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_inputs() {
        assert!(GaussianModel::new(0.0).is_err());
        assert!(GaussianModel::new(f64::NAN).is_err());
        assert!(SufficientStat::new(0, 1.0).is_err());
        assert!(SufficientStat::new(3, f64::INFINITY).is_err());
    }

    #[test]
    fn mean_density_matches_normal() {
        let m = GaussianModel::new(2.0).unwrap();
        // N(ȳ; θ, σ²/n) with σ²/n = 1 at ȳ − θ = 1
        let lnd = m.ln_mean_density(4, 1.0, 0.0);
        assert!((lnd - (-0.5 - HALF_LN_2PI)).abs() < 1e-15);
    }
}
