//! Interval counts of the extended-Ville region under a bimodal prior.

use boundcs::confseq::evcs;
use boundcs::{CsMethod, CsQuery, SufficientStat};
use serde::{Deserialize, Serialize};

use super::{par_map, separated_mixture};
use crate::config::{check_alpha, model, PriorSpec};
use crate::error::Result;
use crate::output::{interval_cells, num, Table};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DisconnectedConfig {
    pub sigma: f64,
    pub n: u64,
    pub ybars: Vec<f64>,
    pub alphas: Vec<f64>,
    pub prior: PriorSpec,
}

impl Default for DisconnectedConfig {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            n: 1,
            ybars: vec![-1.5, 0.0, 1.5],
            alphas: (1..=19).map(|k| k as f64 / 20.0).collect(),
            prior: separated_mixture(),
        }
    }
}

/// Columns `ybar,alpha,count,disconnected,interval,lo,hi`, one row per
/// interval, using the grid method so that gaps are resolved.
pub fn run_disconnected(cfg: &DisconnectedConfig) -> Result<Table> {
    for &a in &cfg.alphas {
        check_alpha(a)?;
    }
    let m = model(cfg.sigma)?;
    let prior = cfg.prior.build()?;
    let jobs: Vec<(f64, f64)> = cfg.ybars.iter().flat_map(|&y| cfg.alphas.iter().map(move |&a| (y, a))).collect();
    let regions = par_map(&jobs, |&(y, a)| {
        evcs(&CsQuery::new(&prior, m, a, SufficientStat::new(cfg.n, y)?, CsMethod::EvilleGrid)?).map_err(Into::into)
    })?;
    let mut t = Table::new(&["ybar", "alpha", "count", "disconnected", "interval", "lo", "hi"]);
    for (&(y, a), r) in jobs.iter().zip(&regions) {
        for [i, lo, hi] in interval_cells(r) {
            t.push(vec![num(y), num(a), r.len().to_string(), u8::from(r.len() > 1).to_string(), i, lo, hi]);
        }
    }
    Ok(t)
}
