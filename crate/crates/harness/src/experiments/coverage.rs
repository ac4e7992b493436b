//! Monte Carlo check of time-uniform coverage.
//!
//! A replication violates a method when the true mean leaves that method's
//! region at any `n ≤ n_max`. Membership of θ* is decided directly from
//! `ln Lₙ(θ*)` against the method's threshold at θ*, which equals building
//! each region and testing θ* but needs one marginal evaluation per step.

use boundcs::calibration::CalibrationFn;
use boundcs::confseq::ln_likelihood_ratio;
use boundcs::SufficientStat;
use serde::{Deserialize, Serialize};

use super::{gaussian, horseshoe, laplace, normal, par_map, rng, separated_mixture};
use crate::config::{check_alpha, model, MethodSpec, PriorSpec};
use crate::error::{HarnessError, Result};
use crate::output::{num, Table};

pub const MIN_REPLICATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverageConfig {
    pub sigma: f64,
    pub alpha: f64,
    pub n_max: u64,
    pub replications: usize,
    pub theta_stars: Vec<f64>,
    pub priors: Vec<PriorSpec>,
    pub seed: u64,
}

impl Default for CoverageConfig {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            alpha: 0.1,
            n_max: 200,
            replications: 2000,
            theta_stars: vec![0.0, 10.0],
            priors: vec![
                gaussian(0.0, 1.0),
                laplace(0.0, 1.0),
                PriorSpec::student_t(5.0, 0.0, 1.0),
                horseshoe(0.0, 1.0),
                separated_mixture(),
                PriorSpec::improper(0.0, 1.0),
            ],
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageRow {
    pub prior: String,
    pub method: &'static str,
    pub theta_star: f64,
    pub replications: usize,
    pub violations: usize,
}

impl CoverageRow {
    pub fn rate(&self) -> f64 {
        self.violations as f64 / self.replications as f64
    }

    /// 95% Wilson score interval for the violation probability.
    pub fn wilson(&self) -> (f64, f64) {
        let z = 1.959_963_984_540_054_f64;
        let (n, p) = (self.replications as f64, self.rate());
        let denom = 1.0 + z * z / n;
        let centre = (p + z * z / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
        let lo = if self.violations == 0 { 0.0 } else { (centre - half).max(0.0) };
        let hi = if self.violations == self.replications { 1.0 } else { (centre + half).min(1.0) };
        (lo, hi)
    }
}

pub fn run_coverage(cfg: &CoverageConfig) -> Result<Vec<CoverageRow>> {
    check_alpha(cfg.alpha)?;
    if cfg.replications < MIN_REPLICATIONS || cfg.n_max < 1 {
        return Err(HarnessError::Config(format!(
            "coverage needs at least {MIN_REPLICATIONS} replications and n_max ≥ 1"
        )));
    }
    let m = model(cfg.sigma)?;
    let mut rows = Vec::new();
    for spec in &cfg.priors {
        let prior = spec.build()?;
        for &theta in &cfg.theta_stars {
            // thresholds on ln Lₙ(θ*) for the methods that apply
            let mut methods: Vec<(MethodSpec, f64)> = Vec::new();
            if prior.is_proper() {
                methods.push((MethodSpec::Ville, -cfg.alpha.ln()));
            }
            methods.push((MethodSpec::Eville, CalibrationFn::new(&prior, m, theta)?.ln_inverse(cfg.alpha)?));
            let reps: Vec<u64> = (0..cfg.replications as u64).collect();
            let outcomes = par_map(&reps, |&rep| {
                let mut r = rng(cfg.seed, rep);
                let mut violated = vec![false; methods.len()];
                let mut sum = 0.0;
                for n in 1..=cfg.n_max {
                    sum += theta + cfg.sigma * normal(&mut r);
                    let stat = SufficientStat::new(n, sum / n as f64)?;
                    let ln_l = ln_likelihood_ratio(&prior, &m, &stat, theta)?;
                    for (v, &(_, threshold)) in violated.iter_mut().zip(&methods) {
                        *v |= ln_l > threshold;
                    }
                    if violated.iter().all(|&v| v) {
                        break;
                    }
                }
                Ok(violated)
            })?;
            for (k, &(method, _)) in methods.iter().enumerate() {
                rows.push(CoverageRow {
                    prior: spec.label(),
                    method: method.label(),
                    theta_star: theta,
                    replications: cfg.replications,
                    violations: outcomes.iter().filter(|o| o[k]).count(),
                });
            }
        }
    }
    Ok(rows)
}

/// Columns `prior,method,theta_star,replications,violations,rate,ci_lo,ci_hi,bound`
/// where `bound = α + 3·√(α(1−α)/R)`.
pub fn coverage_table(cfg: &CoverageConfig, rows: &[CoverageRow]) -> Table {
    let mut t =
        Table::new(&["prior", "method", "theta_star", "replications", "violations", "rate", "ci_lo", "ci_hi", "bound"]);
    for r in rows {
        let (lo, hi) = r.wilson();
        let bound = cfg.alpha + 3.0 * (cfg.alpha * (1.0 - cfg.alpha) / r.replications as f64).sqrt();
        t.push(vec![
            r.prior.clone(),
            r.method.into(),
            num(r.theta_star),
            r.replications.to_string(),
            r.violations.to_string(),
            num(r.rate()),
            num(lo),
            num(hi),
            num(bound),
        ]);
    }
    t
}
