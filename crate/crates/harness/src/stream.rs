//! Incremental region updates over an observation sequence.

use boundcs::confseq::region;
use boundcs::priors::{conflict_index, posterior_mean};
use boundcs::{ConfidenceRegion, CsQuery, SufficientStat};

use crate::config::{model, RunConfig};
use crate::error::{HarnessError, Result};
use crate::output::{interval_cells, num, opt, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub n: u64,
    pub ybar: f64,
    pub region: ConfidenceRegion,
    /// posterior mean of θ given the first `n` observations
    pub estimate: f64,
    /// prior-data conflict index; absent for improper priors
    pub conflict: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub method: &'static str,
    pub records: Vec<Record>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Record> {
        self.records.last()
    }

    /// One row per interval in the `n,method,lo,hi` layout, followed by the
    /// per-step summaries.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["n", "method", "lo", "hi", "interval", "ybar", "estimate", "conflict"]);
        for r in &self.records {
            for [i, lo, hi] in interval_cells(&r.region) {
                t.push(vec![
                    r.n.to_string(),
                    self.method.to_string(),
                    lo,
                    hi,
                    i,
                    num(r.ybar),
                    num(r.estimate),
                    opt(r.conflict),
                ]);
            }
        }
        t
    }
}

/// Running count and compensated sum of the observations.
#[derive(Debug, Clone, Copy, Default)]
struct Running {
    n: u64,
    sum: f64,
    carry: f64,
}

impl Running {
    fn push(&mut self, y: f64) {
        self.n += 1;
        let t = self.sum + y;
        self.carry += if self.sum.abs() >= y.abs() { (self.sum - t) + y } else { (y - t) + self.sum };
        self.sum = t;
    }

    fn mean(&self) -> f64 {
        (self.sum + self.carry) / self.n as f64
    }
}

/// Emits the region and posterior-mean estimate after every observation.
pub fn stream(config: &RunConfig, observations: &[f64]) -> Result<Trajectory> {
    if observations.is_empty() {
        return Err(HarnessError::Config("no observations".into()));
    }
    config.validate()?;
    let prior = config.prior.build()?;
    let model = model(config.sigma)?;
    let method = config.method.resolve(&prior);
    let mut acc = Running::default();
    let mut records = Vec::with_capacity(observations.len());
    for (index, &y) in observations.iter().enumerate() {
        if !y.is_finite() {
            return Err(HarnessError::Observation { index });
        }
        acc.push(y);
        let ybar = acc.mean();
        let stat = SufficientStat::new(acc.n, ybar)?;
        let query = CsQuery::new(&prior, model, config.alpha, stat, method)?;
        records.push(Record {
            n: acc.n,
            ybar,
            region: region(&query)?,
            estimate: posterior_mean(&prior, &model, &stat)?,
            conflict: if prior.is_proper() { Some(conflict_index(&prior, &model, &stat)?) } else { None },
        });
    }
    Ok(Trajectory { method: config.method.label(), records })
}

/// Parses one observation per non-blank line.
pub fn parse_observations(text: &str) -> Result<Vec<f64>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(index, l)| match l.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(HarnessError::Observation { index }),
        })
        .collect()
}
