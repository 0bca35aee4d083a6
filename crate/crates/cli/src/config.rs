//! Run configuration shared by flag parsing and `--config` files.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use qthermo::QuadratureSpec64;

use crate::CliError;

/// Environment variable that overrides the quadrature `abs_tol`.
pub const TOLERANCE_ENV: &str = "QTHERMO_TOLERANCE";

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_COUNT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Qfi,
    PriorPdf,
    PriorStructure,
    PriorNormcheck,
    PriorMarginalcheck,
    PriorSample,
    GibbsPdf,
    GibbsMean,
    GibbsVar,
    GibbsEntropy,
    GibbsFisher,
    GibbsJeffreys,
    GibbsSweep,
    Figures,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

/// A single β or a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    Value(f64),
    Grid(GridSpec),
}

/// Partial override of the default quadrature policy.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub base_rule_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub beta: Option<BetaSpec>,
    #[serde(default)]
    pub point: Option<Vec<f64>>,
    #[serde(default)]
    pub z: Option<f64>,
    #[serde(default)]
    pub quantity: Option<String>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub svg: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            n: None,
            beta: None,
            point: None,
            z: None,
            quantity: None,
            count: None,
            seed: None,
            tolerances: Tolerances::default(),
            output_path: None,
            format: Format::Csv,
            svg: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    /// Quadrature policy after applying the config's overrides and then the
    /// environment variable.
    pub fn quadrature(&self, env_abs_tol: Option<&str>) -> Result<QuadratureSpec64, CliError> {
        let mut spec = QuadratureSpec64::default();
        let t = &self.tolerances;
        if let Some(v) = t.abs_tol {
            spec.abs_tol = v;
        }
        if let Some(v) = t.rel_tol {
            spec.rel_tol = v;
        }
        if let Some(v) = t.max_subdivisions {
            spec.max_subdivisions = v;
        }
        if let Some(v) = t.base_rule_order {
            spec.base_rule_order = v;
        }
        if let Some(raw) = env_abs_tol {
            let v: f64 = raw.trim().parse().map_err(|_| {
                CliError::Usage(format!("{TOLERANCE_ENV} must be a number, got {raw:?}"))
            })?;
            spec.abs_tol = v;
        }
        spec.validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(spec)
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n
            .ok_or_else(|| CliError::Usage("missing required parameter n".into()))
    }

    pub fn require_beta(&self) -> Result<f64, CliError> {
        match self.beta {
            Some(BetaSpec::Value(b)) => Ok(b),
            Some(BetaSpec::Grid(_)) => Err(CliError::Usage(
                "this command takes a single beta, not a grid".into(),
            )),
            None => Err(CliError::Usage("missing required parameter beta".into())),
        }
    }

    pub fn require_grid(&self) -> Result<GridSpec, CliError> {
        match self.beta {
            Some(BetaSpec::Grid(g)) => Ok(g),
            _ => Err(CliError::Usage(
                "this command needs a beta grid (min, max, step)".into(),
            )),
        }
    }
}
