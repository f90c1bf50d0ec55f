//! Run configuration: JSON file, flag overrides, defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sipw_core::family::{self, FamilyId, FamilyParams, Sign};
use sipw_core::grid::Grid;

use crate::CliError;

/// Default tolerance on relative residuals of the condition equations.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-9;
/// Default tolerance on spectral defects (discretization-limited).
pub const DEFAULT_SPECTRAL_TOL: f64 = 5e-4;
/// Default sample count for residual sweeps.
pub const DEFAULT_VERIFY_SAMPLES: usize = 1000;
/// Default interior point count for spectral grids.
pub const DEFAULT_SPECTRAL_POINTS: usize = 8192;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub spectral: SpectralConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))
    }

    /// Fields set on `other` win over `self` (flags override file values).
    pub fn overridden_by(mut self, other: &RunConfig) -> RunConfig {
        if other.family.is_some() {
            self.family = other.family.clone();
        }
        macro_rules! take {
            ($($section:ident . $field:ident),* $(,)?) => {
                $(if other.$section.$field.is_some() {
                    self.$section.$field = other.$section.$field.clone();
                })*
            };
        }
        take!(
            params.b,
            params.c,
            params.d,
            params.sign,
            params.m,
            grid.a,
            grid.b,
            grid.n,
            spectral.k,
            spectral.depth,
            tolerances.residual,
            tolerances.spectral,
            output.format,
            output.path,
        );
        self
    }
}

/// Fully resolved configuration with every default applied.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub family: FamilyId,
    pub params: FamilyParams,
    pub grid: Option<(f64, f64, usize)>,
    pub k: usize,
    pub depth: usize,
    pub residual_tol: f64,
    pub spectral_tol: f64,
}

impl Resolved {
    pub fn from_config(config: &RunConfig) -> Result<Resolved, CliError> {
        let name = config
            .family
            .as_deref()
            .ok_or_else(|| CliError::usage("a family must be named (--family or config)"))?;
        let family = FamilyId::parse(name).ok_or_else(|| {
            let names: Vec<&str> = FamilyId::ALL.iter().map(|f| f.name()).collect();
            CliError::usage(format!(
                "unknown family '{name}' (expected one of: {})",
                names.join(", ")
            ))
        })?;
        let sign = match config.params.sign {
            None => Sign::Plus,
            Some(v) => Sign::from_value(v)
                .ok_or_else(|| CliError::usage(format!("sign must be 1 or -1, got {v}")))?,
        };
        let params = FamilyParams {
            b: config.params.b.unwrap_or(0.0),
            c: config.params.c.unwrap_or(1.0),
            d: config.params.d.unwrap_or(0.0),
            sign,
            m: config.params.m.unwrap_or(0.0),
        };
        params
            .validate(family)
            .map_err(|e| CliError::usage(e.to_string()))?;
        let grid = match (config.grid.a, config.grid.b, config.grid.n) {
            (None, None, None) => None,
            (a, b, n) => {
                let (da, db) = family::truncated_domain(family, &params);
                Some((a.unwrap_or(da), b.unwrap_or(db), n.unwrap_or(0)))
            }
        };
        Ok(Resolved {
            family,
            params,
            grid,
            k: config.spectral.k.unwrap_or(4),
            depth: config.spectral.depth.unwrap_or(2),
            residual_tol: config.tolerances.residual.unwrap_or(DEFAULT_RESIDUAL_TOL),
            spectral_tol: config.tolerances.spectral.unwrap_or(DEFAULT_SPECTRAL_TOL),
        })
    }

    /// Grid for this run; `default_n` applies when the config named none.
    pub fn grid_with_default(&self, default_n: usize) -> Result<Grid, CliError> {
        let (a, b, n) = match self.grid {
            Some((a, b, n)) => (a, b, if n == 0 { default_n } else { n }),
            None => {
                let (a, b) = family::truncated_domain(self.family, &self.params);
                (a, b, default_n)
            }
        };
        Grid::new(a, b, n).map_err(|e| CliError::usage(e.to_string()))
    }

    /// Effective configuration with every field filled; `grid` is the grid
    /// the command actually used.
    pub fn effective_config(&self, grid: &Grid, format: &str, path: &str) -> RunConfig {
        RunConfig {
            family: Some(self.family.name().to_string()),
            params: ParamsConfig {
                b: Some(self.params.b),
                c: Some(self.params.c),
                d: Some(self.params.d),
                sign: Some(self.params.sign.value()),
                m: Some(self.params.m),
            },
            grid: GridConfig {
                a: Some(grid.lower()),
                b: Some(grid.upper()),
                n: Some(grid.len()),
            },
            spectral: SpectralConfig {
                k: Some(self.k),
                depth: Some(self.depth),
            },
            tolerances: ToleranceConfig {
                residual: Some(self.residual_tol),
                spectral: Some(self.spectral_tol),
            },
            output: OutputConfig {
                format: Some(format.to_string()),
                path: Some(path.to_string()),
            },
        }
    }
}
