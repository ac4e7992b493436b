//! Region volume as a function of the sample mean.

use boundcs::confseq::region;
use boundcs::{CsQuery, SufficientStat};
use serde::{Deserialize, Serialize};

use super::{gaussian, horseshoe, laplace, par_map};
use crate::config::{check_alpha, model, MethodSpec, PriorSpec};
use crate::error::{HarnessError, Result};
use crate::output::{num, Table};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VolumeConfig {
    pub sigma: f64,
    pub alpha: f64,
    pub ns: Vec<u64>,
    pub ybar_min: f64,
    pub ybar_max: f64,
    pub points: usize,
    pub priors: Vec<PriorSpec>,
}

impl Default for VolumeConfig {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            alpha: 0.1,
            ns: vec![1, 10, 50],
            ybar_min: -30.0,
            ybar_max: 30.0,
            points: 241,
            priors: vec![
                gaussian(0.0, 1.0),
                laplace(0.0, 1.0),
                horseshoe(0.0, 1.0),
                PriorSpec::student_t(5.0, 0.0, 1.0),
                PriorSpec::improper(0.0, 1.0),
            ],
        }
    }
}

impl VolumeConfig {
    pub fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.ybar_min];
        }
        let step = (self.ybar_max - self.ybar_min) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.ybar_min + step * i as f64).collect()
    }
}

/// Columns `prior,method,n,ybar,volume,intervals`. Ville rows are omitted for
/// improper priors.
pub fn run_volume(cfg: &VolumeConfig) -> Result<Table> {
    check_alpha(cfg.alpha)?;
    if cfg.points == 0
        || cfg.ybar_min.is_nan()
        || cfg.ybar_max.is_nan()
        || cfg.ybar_min > cfg.ybar_max
        || cfg.ns.contains(&0)
    {
        return Err(HarnessError::Config("volume sweep needs points ≥ 1, ybar_min ≤ ybar_max and n ≥ 1".into()));
    }
    let m = model(cfg.sigma)?;
    let grid = cfg.grid();
    let mut jobs = Vec::new();
    for spec in &cfg.priors {
        let prior = spec.build()?;
        for method in [MethodSpec::Ville, MethodSpec::Eville] {
            if method == MethodSpec::Ville && !prior.is_proper() {
                continue;
            }
            for &n in &cfg.ns {
                for &y in &grid {
                    jobs.push((spec.label(), prior.clone(), method, n, y));
                }
            }
        }
    }
    let rows = par_map(&jobs, |(label, prior, method, n, y)| {
        let q = CsQuery::new(prior, m, cfg.alpha, SufficientStat::new(*n, *y)?, method.resolve(prior))?;
        let r = region(&q)?;
        Ok(vec![label.clone(), method.label().into(), n.to_string(), num(*y), num(r.volume()), r.len().to_string()])
    })?;
    let mut table = Table::new(&["prior", "method", "n", "ybar", "volume", "intervals"]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}
