//! Command-line experiment engine for the `boundcs` confidence sequences:
//! streaming region updates, plot-ready tables, coverage Monte Carlo and run
//! persistence.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod stream;

pub use config::{MethodSpec, PriorKindSpec, PriorSpec, RunConfig};
pub use error::{HarnessError, Result};
pub use output::{RegionJson, Table};
pub use stream::{stream, Record, Trajectory};
