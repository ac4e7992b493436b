//! Trajectories of Ville and extended-Ville regions along simulated paths.

use serde::{Deserialize, Serialize};

use super::{gaussian, horseshoe, laplace, observations, par_map, rng};
use crate::config::{MethodSpec, PriorSpec, RunConfig};
use crate::error::Result;
use crate::output::{interval_cells, num, opt, Table};
use crate::stream::stream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig1Config {
    pub sigma: f64,
    pub alpha: f64,
    pub n_max: u64,
    pub theta_stars: Vec<f64>,
    pub priors: Vec<PriorSpec>,
    pub seed: u64,
}

impl Default for Fig1Config {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            alpha: 0.1,
            n_max: 100,
            theta_stars: vec![0.0, 10.0, 100.0],
            priors: vec![gaussian(0.0, 0.1), laplace(0.0, 0.1), horseshoe(0.0, 0.1), PriorSpec::improper(0.0, 1.0)],
            seed: 0,
        }
    }
}

/// One path per θ*, shared by every prior and method.
pub fn run_fig1(cfg: &Fig1Config) -> Result<Table> {
    let mut jobs = Vec::new();
    for (k, &theta) in cfg.theta_stars.iter().enumerate() {
        let path = observations(&mut rng(cfg.seed, k as u64), theta, cfg.sigma, cfg.n_max);
        for prior in &cfg.priors {
            let proper = prior.build()?.is_proper();
            for method in [MethodSpec::Ville, MethodSpec::Eville] {
                if method == MethodSpec::Ville && !proper {
                    continue;
                }
                let run = RunConfig {
                    prior: prior.clone(),
                    sigma: cfg.sigma,
                    alpha: cfg.alpha,
                    method,
                    n_max: cfg.n_max,
                    seed: cfg.seed,
                    theta_star: theta,
                    output: None,
                };
                jobs.push((run, path.clone()));
            }
        }
    }
    let trajectories = par_map(&jobs, |(run, path)| stream(run, path))?;
    let mut table = Table::new(&[
        "theta_star",
        "prior",
        "method",
        "n",
        "lo",
        "hi",
        "interval",
        "ybar",
        "estimate",
        "conflict",
        "volume",
    ]);
    for ((run, _), traj) in jobs.iter().zip(&trajectories) {
        let label = run.prior.label();
        for r in &traj.records {
            for [i, lo, hi] in interval_cells(&r.region) {
                table.push(vec![
                    num(run.theta_star),
                    label.clone(),
                    traj.method.to_string(),
                    r.n.to_string(),
                    lo,
                    hi,
                    i,
                    num(r.ybar),
                    num(r.estimate),
                    opt(r.conflict),
                    num(r.region.volume()),
                ]);
            }
        }
    }
    Ok(table)
}
