//! Run configuration and the JSON prior schema.

use boundcs::{CsMethod, GaussianModel, Prior};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorKindSpec {
    Gaussian,
    Laplace,
    StudentT,
    Horseshoe,
    GaussianMixture,
    ImproperTilted,
}

/// A prior as written in config files, e.g.
/// `{"kind": "student_t", "location": 0, "scale": 1, "df": 5}`.
///
/// For `improper_tilted`, `location` is the tilt centre and `scale` the tilt
/// unit; mixtures take their components from `weights`, `locations` and
/// `scales` and ignore `location`/`scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorSpec {
    pub kind: PriorKindSpec,
    #[serde(default)]
    pub location: f64,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub df: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locations: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<Vec<f64>>,
}

fn one() -> f64 {
    1.0
}

impl PriorSpec {
    pub fn new(kind: PriorKindSpec, location: f64, scale: f64) -> Self {
        Self { kind, location, scale, df: None, kappa: None, weights: None, locations: None, scales: None }
    }

    pub fn student_t(df: f64, location: f64, scale: f64) -> Self {
        Self { df: Some(df), ..Self::new(PriorKindSpec::StudentT, location, scale) }
    }

    pub fn improper(kappa: f64, sigma: f64) -> Self {
        Self { kappa: Some(kappa), ..Self::new(PriorKindSpec::ImproperTilted, 0.0, sigma) }
    }

    pub fn mixture(weights: Vec<f64>, locations: Vec<f64>, scales: Vec<f64>) -> Self {
        Self {
            weights: Some(weights),
            locations: Some(locations),
            scales: Some(scales),
            ..Self::new(PriorKindSpec::GaussianMixture, 0.0, 1.0)
        }
    }

    /// Short label used in output tables.
    pub fn label(&self) -> String {
        match self.kind {
            PriorKindSpec::Gaussian => "G".into(),
            PriorKindSpec::Laplace => "LP".into(),
            PriorKindSpec::StudentT => format!("T{}", self.df.unwrap_or(f64::NAN)),
            PriorKindSpec::Horseshoe => "HS".into(),
            PriorKindSpec::GaussianMixture => "MIX".into(),
            PriorKindSpec::ImproperTilted => format!("I{}", self.kappa.unwrap_or(0.0)),
        }
    }

    pub fn build(&self) -> Result<Prior> {
        let missing = |field: &str| HarnessError::Config(format!("{:?} prior needs `{field}`", self.kind));
        let prior = match self.kind {
            PriorKindSpec::Gaussian => Prior::gaussian(self.location, self.scale),
            PriorKindSpec::Laplace => Prior::laplace(self.location, self.scale),
            PriorKindSpec::StudentT => {
                Prior::student_t(self.df.ok_or_else(|| missing("df"))?, self.location, self.scale)
            }
            PriorKindSpec::Horseshoe => Prior::horseshoe(self.location, self.scale),
            PriorKindSpec::ImproperTilted => {
                Prior::improper_tilted(self.kappa.unwrap_or(0.0), self.location, self.scale)
            }
            PriorKindSpec::GaussianMixture => Prior::gaussian_mixture(
                self.weights.clone().ok_or_else(|| missing("weights"))?,
                self.locations.clone().ok_or_else(|| missing("locations"))?,
                self.scales.clone().ok_or_else(|| missing("scales"))?,
            ),
        };
        prior.map_err(|e| HarnessError::Config(format!("invalid prior: {e}")))
    }
}

/// How regions are built. `Eville` picks the fastest exact route for the
/// prior: the closed form for improper priors, the grid for mixtures (whose
/// regions may be disconnected) and the bracket otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MethodSpec {
    Ville,
    Eville,
    EvilleGrid,
    EvilleBracket,
    ImproperClosedForm,
}

impl MethodSpec {
    pub fn resolve(self, prior: &Prior) -> CsMethod {
        match self {
            Self::Ville => CsMethod::Ville,
            Self::EvilleGrid => CsMethod::EvilleGrid,
            Self::EvilleBracket => CsMethod::EvilleBracket,
            Self::ImproperClosedForm => CsMethod::ImproperClosedForm,
            Self::Eville if !prior.is_proper() => CsMethod::ImproperClosedForm,
            Self::Eville if matches!(prior.kind(), boundcs::PriorKind::GaussianMixture { .. }) => CsMethod::EvilleGrid,
            Self::Eville => CsMethod::EvilleBracket,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Ville => "ville",
            Self::Eville => "eville",
            Self::EvilleGrid => "eville_grid",
            Self::EvilleBracket => "eville_bracket",
            Self::ImproperClosedForm => "improper_closed_form",
        }
    }
}

/// Parameters of a single streamed or simulated run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub prior: PriorSpec,
    #[serde(default = "one")]
    pub sigma: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_method")]
    pub method: MethodSpec,
    #[serde(default = "default_n_max")]
    pub n_max: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub theta_star: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn default_alpha() -> f64 {
    0.1
}

fn default_method() -> MethodSpec {
    MethodSpec::Eville
}

fn default_n_max() -> u64 {
    100
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.n_max < 1 {
            return Err(HarnessError::Config("n_max must be at least 1".into()));
        }
        if !self.theta_star.is_finite() {
            return Err(HarnessError::Config("theta_star must be finite".into()));
        }
        model(self.sigma)?;
        self.prior.build()?;
        Ok(())
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(HarnessError::Config(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

pub(crate) fn model(sigma: f64) -> Result<GaussianModel> {
    GaussianModel::new(sigma).map_err(|_| HarnessError::Config(format!("sigma must be positive, got {sigma}")))
}

/// Parses a config file body, mapping schema errors to config errors.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
}
