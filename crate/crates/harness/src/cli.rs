//! Argument parsing and command dispatch.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use crate::config::{from_json, MethodSpec, PriorSpec, RunConfig};
use crate::error::{HarnessError, Result};
use crate::experiments::convergence::{run_convergence, ConvergenceConfig};
use crate::experiments::coverage::{coverage_table, run_coverage, CoverageConfig};
use crate::experiments::disconnected::{run_disconnected, DisconnectedConfig};
use crate::experiments::fig1::{run_fig1, Fig1Config};
use crate::experiments::pvalue::{run_pvalue_curves, PValueConfig};
use crate::experiments::volume::{run_volume, VolumeConfig};
use crate::output::{write_sidecar, write_tables, RegionJson};
use crate::stream::{parse_observations, stream};

#[derive(Debug, Parser)]
#[command(name = "boundcs", version, about = "Confidence sequences with bounded-influence priors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regions after each observation (one number per line) from a file or stdin.
    Stream(StreamArgs),
    /// Ville and extended-Ville trajectories along simulated paths.
    Fig1(ExperimentArgs),
    /// Region volume swept over the sample mean.
    Volume(ExperimentArgs),
    /// Time-uniform coverage Monte Carlo.
    Coverage(ExperimentArgs),
    /// p-value functions and thresholds.
    Pvalue(ExperimentArgs),
    /// Interval counts under a bimodal mixture prior.
    Disconnected(ExperimentArgs),
    /// Distance to the limit interval under growing conflict.
    Convergence(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct StreamArgs {
    /// observation file; standard input when absent or `-`
    pub input: Option<PathBuf>,
    /// prior as inline JSON or a path to a JSON file
    #[arg(long)]
    pub prior_json: String,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = MethodSpec::Eville)]
    pub method: MethodSpec,
    /// CSV destination (a `.json` sidecar is written next to it); stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// JSON configuration; fields left out take their defaults
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// overrides the configured seed
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

fn load<T: DeserializeOwned + Default>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            from_json(&fs::read_to_string(p).map_err(|e| HarnessError::Config(format!("{}: {e}", p.display())))?)
        }
    }
}

fn read_prior(arg: &str) -> Result<PriorSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| HarnessError::Config(format!("{arg}: {e}")))?
    };
    from_json(&text)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stream(a) => run_stream(a),
        Command::Fig1(a) => {
            let mut cfg: Fig1Config = load(&a.config)?;
            cfg.seed = a.seed.unwrap_or(cfg.seed);
            write_tables(&a.out_dir, "fig1", &cfg, &[("fig1", run_fig1(&cfg)?)])
        }
        Command::Volume(a) => {
            let cfg: VolumeConfig = load(&a.config)?;
            write_tables(&a.out_dir, "volume", &cfg, &[("volume", run_volume(&cfg)?)])
        }
        Command::Coverage(a) => {
            let mut cfg: CoverageConfig = load(&a.config)?;
            cfg.seed = a.seed.unwrap_or(cfg.seed);
            let rows = run_coverage(&cfg)?;
            write_tables(&a.out_dir, "coverage", &cfg, &[("coverage", coverage_table(&cfg, &rows))])
        }
        Command::Pvalue(a) => {
            let mut cfg: PValueConfig = load(&a.config)?;
            cfg.seed = a.seed.unwrap_or(cfg.seed);
            let (curves, thresholds) = run_pvalue_curves(&cfg)?;
            write_tables(&a.out_dir, "pvalue", &cfg, &[("pvalue", curves), ("thresholds", thresholds)])
        }
        Command::Disconnected(a) => {
            let cfg: DisconnectedConfig = load(&a.config)?;
            write_tables(&a.out_dir, "disconnected", &cfg, &[("disconnected", run_disconnected(&cfg)?)])
        }
        Command::Convergence(a) => {
            let mut cfg: ConvergenceConfig = load(&a.config)?;
            cfg.seed = a.seed.unwrap_or(cfg.seed);
            let (sweep, mc) = run_convergence(&cfg)?;
            write_tables(&a.out_dir, "convergence", &cfg, &[("convergence_sweep", sweep), ("convergence_mc", mc)])
        }
    }
}

fn run_stream(a: StreamArgs) -> Result<()> {
    let mut text = String::new();
    match a.input.as_deref() {
        None => std::io::stdin().read_to_string(&mut text).map(|_| ())?,
        Some(p) if p == Path::new("-") => std::io::stdin().read_to_string(&mut text).map(|_| ())?,
        Some(p) => text = fs::read_to_string(p).map_err(|e| HarnessError::Config(format!("{}: {e}", p.display())))?,
    }
    let observations = parse_observations(&text)?;
    let config = RunConfig {
        prior: read_prior(&a.prior_json)?,
        sigma: a.sigma,
        alpha: a.alpha,
        method: a.method,
        n_max: observations.len() as u64,
        seed: 0,
        theta_star: 0.0,
        output: a.out.as_ref().map(|p| p.display().to_string()),
    };
    let traj = stream(&config, &observations)?;
    let csv = traj.to_table().to_csv()?;
    match &a.out {
        None => print!("{csv}"),
        Some(path) => {
            fs::write(path, csv)?;
            let last = traj.last().map(|r| RegionJson::from(&r.region));
            write_sidecar(path, "stream", &config, Some(serde_json::json!({ "final_region": last })))?;
        }
    }
    Ok(())
}
