//! Ville, extended-Ville and Pratt p-value functions, and the thresholds
//! each procedure applies to `L₁`.

use boundcs::calibration::CalibrationFn;
use boundcs::confseq::{p_value_eville, p_value_pratt, p_value_ville, pratt_thresholds, MIN_PRATT_SAMPLES};
use boundcs::priors::posterior_mean;
use boundcs::SufficientStat;
use serde::{Deserialize, Serialize};

use super::{gaussian, horseshoe, laplace, par_map};
use crate::config::{check_alpha, model, PriorSpec};
use crate::error::{HarnessError, Result};
use crate::output::{num, Table};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PValueConfig {
    pub sigma: f64,
    pub n: u64,
    pub ybars: Vec<f64>,
    pub priors: Vec<PriorSpec>,
    /// tested values span `[min(ȳ, μ) − margin, max(ȳ, μ) + margin]`
    pub margin: f64,
    pub theta_points: usize,
    pub n_mc: usize,
    /// levels for the threshold table
    pub alphas: Vec<f64>,
    pub threshold_thetas: Vec<f64>,
    pub seed: u64,
}

impl Default for PValueConfig {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            n: 1,
            ybars: vec![0.25, 10.0, 30.0],
            priors: vec![gaussian(0.0, 1.0), laplace(0.0, 1.0), horseshoe(0.0, 1.0)],
            margin: 6.0,
            theta_points: 201,
            n_mc: MIN_PRATT_SAMPLES,
            alphas: vec![0.1, 0.3],
            threshold_thetas: (-20..=20).map(|k| k as f64 * 0.5).collect(),
            seed: 0,
        }
    }
}

/// Returns the p-value table (`prior,ybar,theta0,p_ville,p_eville,p_pratt,posterior_mean`,
/// the last column flagging the row evaluated at the posterior mean) and
/// the threshold table (`prior,alpha,theta0,inv_alpha,g_inv,pratt,pratt_se,c_star`).
pub fn run_pvalue_curves(cfg: &PValueConfig) -> Result<(Table, Table)> {
    if cfg.theta_points < 2 || cfg.n_mc < MIN_PRATT_SAMPLES || cfg.n == 0 || cfg.margin.is_nan() || cfg.margin <= 0.0 {
        return Err(HarnessError::Config(format!(
            "pvalue needs theta_points ≥ 2, n ≥ 1, margin > 0 and n_mc ≥ {MIN_PRATT_SAMPLES}"
        )));
    }
    for &a in &cfg.alphas {
        check_alpha(a)?;
    }
    let m = model(cfg.sigma)?;
    let mut curve_jobs = Vec::new();
    let mut threshold_jobs = Vec::new();
    for spec in &cfg.priors {
        let prior = spec.build()?;
        if !prior.is_proper() {
            return Err(HarnessError::Config("p-value curves need proper priors".into()));
        }
        for &y in &cfg.ybars {
            let stat = SufficientStat::new(cfg.n, y)?;
            let lo = y.min(prior.location()) - cfg.margin;
            let hi = y.max(prior.location()) + cfg.margin;
            let step = (hi - lo) / (cfg.theta_points - 1) as f64;
            for i in 0..cfg.theta_points {
                curve_jobs.push((spec.label(), prior.clone(), stat, lo + step * i as f64, false));
            }
            curve_jobs.push((spec.label(), prior.clone(), stat, posterior_mean(&prior, &m, &stat)?, true));
        }
        for &t in &cfg.threshold_thetas {
            threshold_jobs.push((spec.label(), prior.clone(), t));
        }
    }
    let curves = par_map(&curve_jobs, |(label, prior, stat, t, at_pm)| {
        Ok(vec![
            label.clone(),
            num(stat.ybar()),
            num(*t),
            num(p_value_ville(prior, &m, stat, *t)?),
            num(p_value_eville(prior, &m, stat, *t)?),
            num(p_value_pratt(prior, &m, stat, *t, cfg.n_mc, cfg.seed)?),
            u8::from(*at_pm).to_string(),
        ])
    })?;
    let thresholds = par_map(&threshold_jobs, |(label, prior, t)| {
        let cal = CalibrationFn::new(prior, m, *t)?;
        let pratt = pratt_thresholds(prior, &m, 1, *t, &cfg.alphas, cfg.n_mc, cfg.seed)?;
        cfg.alphas
            .iter()
            .zip(pratt)
            .map(|(&a, k)| {
                Ok(vec![
                    label.clone(),
                    num(a),
                    num(*t),
                    num(1.0 / a),
                    num(cal.g_theta_inv(a)?),
                    num(k.value),
                    num(k.std_error),
                    num(cal.c_star()),
                ])
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut curve_table = Table::new(&["prior", "ybar", "theta0", "p_ville", "p_eville", "p_pratt", "posterior_mean"]);
    curves.into_iter().for_each(|r| curve_table.push(r));
    let mut threshold_table =
        Table::new(&["prior", "alpha", "theta0", "inv_alpha", "g_inv", "pratt", "pratt_se", "c_star"]);
    thresholds.into_iter().flatten().for_each(|r| threshold_table.push(r));
    Ok((curve_table, threshold_table))
}
