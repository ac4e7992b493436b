//! Distance between the extended-Ville region and its limit interval under
//! growing prior-data conflict.

use boundcs::confseq::{evcs, hausdorff, hpd_limit_interval, limiting_interval};
use boundcs::priors::tail_profile;
use boundcs::{ConfidenceRegion, CsMethod, CsQuery, Direction, GaussianModel, Prior, SufficientStat};
use serde::{Deserialize, Serialize};

use super::{horseshoe, laplace, normal, par_map, rng};
use crate::config::{check_alpha, model, PriorSpec};
use crate::error::{HarnessError, Result};
use crate::output::{num, Table};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub sigma: f64,
    pub alpha: f64,
    pub ns: Vec<u64>,
    pub ybars: Vec<f64>,
    pub theta_stars: Vec<f64>,
    pub replications: usize,
    pub priors: Vec<PriorSpec>,
    pub seed: u64,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            alpha: 0.1,
            ns: vec![1, 10, 50],
            ybars: vec![-200.0, -100.0, -50.0, -20.0, -10.0, -5.0, 0.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0],
            theta_stars: vec![10.0, 100.0],
            replications: 25,
            priors: vec![laplace(0.0, 0.1), horseshoe(0.0, 1.0), PriorSpec::student_t(5.0, 0.0, 1.0)],
            seed: 0,
        }
    }
}

/// eVCS, limit interval and HPD-limit interval at one sufficient statistic.
pub struct Comparison {
    pub evcs: ConfidenceRegion,
    pub limit: ConfidenceRegion,
    pub hpd: ConfidenceRegion,
    pub distance: f64,
}

pub fn compare(prior: &Prior, model: GaussianModel, alpha: f64, stat: SufficientStat) -> Result<Comparison> {
    let kappa = tail_profile(prior, &model)
        .kappa
        .ok_or_else(|| HarnessError::Config("convergence needs a bounded-influence prior".into()))?;
    let dir = if stat.ybar() >= prior.location() { Direction::Plus } else { Direction::Minus };
    let evcs = evcs(&CsQuery::new(prior, model, alpha, stat, CsMethod::EvilleBracket)?)?;
    let limit = limiting_interval(kappa, model, alpha, stat, dir)?;
    let hpd = hpd_limit_interval(kappa, model, alpha, stat, dir)?;
    let distance = hausdorff(&evcs, &limit)?;
    Ok(Comparison { evcs, limit, hpd, distance })
}

fn hull_cells(r: &ConfidenceRegion) -> [String; 2] {
    r.hull().map(|(a, b)| [num(a), num(b)]).unwrap_or_default()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

/// The deterministic sweep table
/// (`prior,n,ybar,evcs_lo,evcs_hi,limit_lo,limit_hi,hpd_lo,hpd_hi,hausdorff,relative`)
/// and the Monte Carlo table over θ*
/// (`prior,n,theta_star,replications,median_hausdorff,median_relative`),
/// where `relative` divides by the limit width.
pub fn run_convergence(cfg: &ConvergenceConfig) -> Result<(Table, Table)> {
    check_alpha(cfg.alpha)?;
    if cfg.ns.contains(&0) || cfg.replications == 0 {
        return Err(HarnessError::Config("convergence needs n ≥ 1 and at least one replication".into()));
    }
    let m = model(cfg.sigma)?;
    let priors: Vec<(String, Prior)> = cfg.priors.iter().map(|s| Ok((s.label(), s.build()?))).collect::<Result<_>>()?;
    let mut sweep_jobs = Vec::new();
    let mut mc_jobs = Vec::new();
    for (k, (label, prior)) in priors.iter().enumerate() {
        for &n in &cfg.ns {
            for &y in &cfg.ybars {
                sweep_jobs.push((label.clone(), prior, n, y));
            }
            for (j, &theta) in cfg.theta_stars.iter().enumerate() {
                mc_jobs.push((label.clone(), prior, n, theta, (k * cfg.theta_stars.len() + j) as u64));
            }
        }
    }
    let sweep = par_map(&sweep_jobs, |(label, prior, n, y)| {
        let c = compare(prior, m, cfg.alpha, SufficientStat::new(*n, *y)?)?;
        let [el, eh] = hull_cells(&c.evcs);
        let [ll, lh] = hull_cells(&c.limit);
        let [hl, hh] = hull_cells(&c.hpd);
        Ok(vec![
            label.clone(),
            n.to_string(),
            num(*y),
            el,
            eh,
            ll,
            lh,
            hl,
            hh,
            num(c.distance),
            num(c.distance / c.limit.volume()),
        ])
    })?;
    let mc = par_map(&mc_jobs, |(label, prior, n, theta, stream)| {
        let mut r = rng(cfg.seed, *stream);
        let sd = m.mean_sd(*n);
        let mut dist = Vec::with_capacity(cfg.replications);
        let mut rel = Vec::with_capacity(cfg.replications);
        for _ in 0..cfg.replications {
            // ȳₙ is sufficient, so it is drawn directly
            let y = theta + sd * normal(&mut r);
            let c = compare(prior, m, cfg.alpha, SufficientStat::new(*n, y)?)?;
            dist.push(c.distance);
            rel.push(c.distance / c.limit.volume());
        }
        Ok(vec![
            label.clone(),
            n.to_string(),
            num(*theta),
            cfg.replications.to_string(),
            num(median(dist)),
            num(median(rel)),
        ])
    })?;
    let mut sweep_table = Table::new(&[
        "prior",
        "n",
        "ybar",
        "evcs_lo",
        "evcs_hi",
        "limit_lo",
        "limit_hi",
        "hpd_lo",
        "hpd_hi",
        "hausdorff",
        "relative",
    ]);
    sweep.into_iter().for_each(|r| sweep_table.push(r));
    let mut mc_table = Table::new(&["prior", "n", "theta_star", "replications", "median_hausdorff", "median_relative"]);
    mc.into_iter().for_each(|r| mc_table.push(r));
    Ok((sweep_table, mc_table))
}
