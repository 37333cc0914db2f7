//! Game configuration documents.
//!
//! ```toml
//! payoff = [[2, 3, -2], [-2, 4, 2]]   # player A's payoffs, rows = A's strategies
//! state = [1.0, 0.0]                  # Schmidt coefficients, min(rows, cols) of them
//! resolution = 201                    # optional surface grid size
//! format = "kv"                       # optional: "kv" or "csv"
//! convention = "paper"                # optional: "paper" or "uniform"
//!
//! [tolerances]                        # optional overrides
//! grad_tol = 1e-8
//! br_rel_tol = 1e-6
//! dedup_radius = 1e-4
//! ```

use std::fmt;
use std::str::FromStr;

use qgame::{PayoffMatrix, PhaseConvention, SchmidtState, SearchSettings};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const DEFAULT_RESOLUTION: usize = 201;
pub const MIN_RESOLUTION: usize = 11;
/// Allowed deviation of `sum a_k^2` from 1.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Kv,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "kv" => Ok(Self::Kv),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format {other:?}, expected \"kv\" or \"csv\"")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Kv => "kv",
            Self::Csv => "csv",
        })
    }
}

pub fn parse_convention(s: &str) -> std::result::Result<PhaseConvention, String> {
    match s {
        "paper" => Ok(PhaseConvention::Paper),
        "uniform" => Ok(PhaseConvention::Uniform),
        other => Err(format!("unknown convention {other:?}, expected \"paper\" or \"uniform\"")),
    }
}

#[derive(Debug, Clone)]
pub struct GameConfig {
    pub payoff: PayoffMatrix,
    pub state: SchmidtState,
    pub resolution: usize,
    pub settings: SearchSettings<f64>,
    pub format: OutputFormat,
    pub convention: PhaseConvention,
}

impl GameConfig {
    pub fn new(payoff: Vec<Vec<f64>>, state: Vec<f64>) -> Result<Self> {
        let payoff = PayoffMatrix::new(payoff).map_err(|e| CliError::Validation(format!("payoff: {e}")))?;
        let (n, m) = payoff.shape();
        if n < 2 || m < 2 {
            return Err(CliError::Validation(format!(
                "payoff: quantum games need at least 2x2 strategies, got {n}x{m}"
            )));
        }
        if state.len() != n.min(m) {
            return Err(CliError::Validation(format!(
                "state: a {n}x{m} game needs {} coefficients, got {}",
                n.min(m),
                state.len()
            )));
        }
        let state = SchmidtState::with_tolerance(state, NORM_TOLERANCE)
            .map_err(|e| CliError::Validation(format!("state: {e}")))?;
        Ok(Self {
            payoff,
            state,
            resolution: DEFAULT_RESOLUTION,
            settings: SearchSettings::default(),
            format: OutputFormat::default(),
            convention: PhaseConvention::default(),
        })
    }

    pub fn game(&self) -> Result<qgame::Game> {
        Ok(qgame::Game::with_convention(self.payoff.clone(), self.state.clone(), self.convention)?)
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(CliError::Validation(format!(
                "resolution: must be at least {MIN_RESOLUTION}, got {resolution}"
            )));
        }
        self.resolution = resolution;
        Ok(self)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    payoff: Vec<Vec<f64>>,
    state: Vec<f64>,
    resolution: Option<usize>,
    format: Option<String>,
    convention: Option<String>,
    tolerances: Option<RawTolerances>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    grad_tol: Option<f64>,
    br_rel_tol: Option<f64>,
    dedup_radius: Option<f64>,
    fd_step: Option<f64>,
    scan_points: Option<usize>,
    start_grid: Option<usize>,
}

pub fn parse_config(text: &str) -> Result<GameConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        CliError::Parse { line, column, message: e.message().trim().to_string() }
    })?;
    let mut cfg = GameConfig::new(raw.payoff, raw.state)?;
    if let Some(r) = raw.resolution {
        cfg = cfg.with_resolution(r)?;
    }
    if let Some(f) = raw.format {
        cfg.format = f.parse().map_err(|e| CliError::Validation(format!("format: {e}")))?;
    }
    if let Some(c) = raw.convention {
        cfg.convention = parse_convention(&c).map_err(|e| CliError::Validation(format!("convention: {e}")))?;
    }
    let t = raw.tolerances.unwrap_or_default();
    let positive = |name: &str, v: f64| {
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(CliError::Validation(format!("tolerances.{name}: must be positive, got {v}")))
        }
    };
    let s = &mut cfg.settings;
    if let Some(v) = t.grad_tol {
        s.grad_tol = positive("grad_tol", v)?;
    }
    if let Some(v) = t.br_rel_tol {
        s.br_rel_tol = positive("br_rel_tol", v)?;
    }
    if let Some(v) = t.dedup_radius {
        s.dedup_radius = positive("dedup_radius", v)?;
    }
    if let Some(v) = t.fd_step {
        s.fd_step = positive("fd_step", v)?;
    }
    if let Some(v) = t.scan_points {
        if v < 2 {
            return Err(CliError::Validation("tolerances.scan_points: must be at least 2".into()));
        }
        s.scan_points = v;
    }
    if let Some(v) = t.start_grid {
        if v == 0 {
            return Err(CliError::Validation("tolerances.start_grid: must be at least 1".into()));
        }
        s.start_grid = v;
    }
    Ok(cfg)
}

/// One-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}
