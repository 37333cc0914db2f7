//! Runs every preset and compares against its expected results.

use std::fmt::{self, Write as _};

use qgame::classical::{solve_zero_sum_with, SolverOptions};
use qgame::{EquilibriumFinder, PhaseConvention};
use rand::Rng;

use crate::config::GameConfig;
use crate::error::Result;
use crate::presets::{
    Expectation, Role, ScenarioPreset, SurfaceCheck, CLOSED_FORM_TOL, INFORMATIONAL_TOL, POINT_TOL, PRESETS,
    SURFACE_TOL, VALUE_TOL,
};

/// Random feasible points per closed-form comparison.
pub const CLOSED_FORM_SAMPLES: usize = 100;
const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational mismatch; does not fail the run.
    Note,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Note => "NOTE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub scenario: String,
    pub check: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

impl Outcome {
    pub fn new(scenario: &str, check: &'static str, pass: bool, detail: String) -> Self {
        let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        Self { scenario: scenario.to_string(), check, verdict, detail }
    }

    pub fn line(&self) -> String {
        format!("{} {:<20} {:<13} {}", self.verdict, self.scenario, self.check, self.detail)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReproduceOptions {
    pub convention: PhaseConvention,
    pub shift_to_positive: bool,
    pub resolution: usize,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self {
            convention: PhaseConvention::default(),
            shift_to_positive: true,
            resolution: crate::config::DEFAULT_RESOLUTION,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReproduceSummary {
    pub outcomes: Vec<Outcome>,
}

impl ReproduceSummary {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.verdict == Verdict::Fail).count()
    }

    pub fn scenario_passed(&self, name: &str) -> bool {
        self.outcomes.iter().filter(|o| o.scenario == name).all(|o| o.verdict != Verdict::Fail)
    }

    pub fn outcome(&self, scenario: &str, check: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.scenario == scenario && o.check == check)
    }

    /// Per-check lines followed by one row per scenario.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let _ = writeln!(out, "{}", o.line());
        }
        let _ = writeln!(out, "\n{:<20} {:<6} {:>6} {:>6} {:>6}", "scenario", "result", "pass", "fail", "note");
        let mut names: Vec<&str> = Vec::new();
        for o in &self.outcomes {
            if !names.contains(&o.scenario.as_str()) {
                names.push(&o.scenario);
            }
        }
        for name in names {
            let count = |v| self.outcomes.iter().filter(|o| o.scenario == name && o.verdict == v).count();
            let result = if self.scenario_passed(name) { Verdict::Pass } else { Verdict::Fail };
            let _ = writeln!(
                out,
                "{name:<20} {result:<6} {:>6} {:>6} {:>6}",
                count(Verdict::Pass),
                count(Verdict::Fail),
                count(Verdict::Note)
            );
        }
        let _ = writeln!(out, "\n{} check(s), {} failed", self.outcomes.len(), self.failures());
        out
    }
}

pub fn run_reproduce(options: &ReproduceOptions) -> Result<ReproduceSummary> {
    let mut outcomes = Vec::new();
    for preset in PRESETS {
        outcomes.extend(run_preset(preset, options)?);
    }
    Ok(ReproduceSummary { outcomes })
}

pub fn run_preset(preset: &ScenarioPreset, options: &ReproduceOptions) -> Result<Vec<Outcome>> {
    let mut config = preset.config()?.with_resolution(options.resolution)?;
    config.convention = options.convention;
    let name = preset.name;
    let mut out = vec![
        equilibrium_check(preset, &config)?,
        closed_form_check(preset, &config)?,
        classical_check(preset, &config, options),
    ];
    if let Some(check) = preset.surface {
        out.push(surface_check(name, &config, check)?);
    }
    Ok(out)
}

fn equilibrium_check(preset: &ScenarioPreset, config: &GameConfig) -> Result<Outcome> {
    let game = config.game()?;
    let report = EquilibriumFinder::new(&game, config.settings)?.find()?;
    let found = match (report.point, report.value) {
        (Some((p, q)), Some(v)) => format!("{} at ({p:.9}, {q:.9}) value {v:.12}", report.status),
        _ => report.status.to_string(),
    };
    let (pass, expected) = match preset.expectation {
        Expectation::Saddle { p, q, value } => {
            let pass = match (report.point, report.value) {
                (Some((fp, fq)), Some(v)) => {
                    (fp - p).abs() <= POINT_TOL && (fq - q).abs() <= POINT_TOL && (v - value).abs() <= VALUE_TOL
                }
                _ => false,
            };
            (pass, format!("expected ({p:.9}, {q:.9}) value {value:.12}"))
        }
        Expectation::Value(value) => {
            let pass = report.value.is_some_and(|v| (v - value).abs() <= VALUE_TOL);
            (pass, format!("expected value {value}"))
        }
        Expectation::NoInteriorSaddle => (
            report.interior_saddles.is_empty(),
            format!(
                "expected no interior saddle; {} interior saddle(s) among {} candidates",
                report.interior_saddles.len(),
                report.candidates_examined
            ),
        ),
    };
    Ok(Outcome::new(preset.name, "equilibrium", pass, format!("{found}; {expected} [{}]", preset.provenance)))
}

fn closed_form_check(preset: &ScenarioPreset, config: &GameConfig) -> Result<Outcome> {
    let game = config.game()?;
    let (da, db) = (game.domain_a(), game.domain_b());
    let mut rng: rand_chacha::ChaCha8Rng = rand::SeedableRng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut at = (0.0, 0.0);
    for _ in 0..CLOSED_FORM_SAMPLES {
        let p = rng.gen_range(da.p_min..=da.p_max);
        let q = rng.gen_range(db.p_min..=db.p_max);
        let d = (game.payoff_at(p, q)? - (preset.closed_form.eval)(p, q)).abs();
        if d > worst || d.is_nan() {
            worst = d;
            at = (p, q);
        }
    }
    let tol = match preset.closed_form.role {
        Role::Binding => CLOSED_FORM_TOL,
        Role::Informational => INFORMATIONAL_TOL,
    };
    let ok = worst <= tol;
    let detail = format!(
        "{}: max deviation {worst:.3e} at ({:.4}, {:.4}) over {CLOSED_FORM_SAMPLES} points, tol {tol:e}",
        preset.closed_form.description, at.0, at.1
    );
    let mut outcome = Outcome::new(preset.name, "closed-form", ok, detail);
    if !ok && preset.closed_form.role == Role::Informational {
        outcome.verdict = Verdict::Note;
        outcome.detail.push_str("; finding: published formula disagrees with the engine, likely a transcription error");
    }
    Ok(outcome)
}

fn classical_check(preset: &ScenarioPreset, config: &GameConfig, options: &ReproduceOptions) -> Outcome {
    let opts = SolverOptions { shift_to_positive: options.shift_to_positive };
    let expected = preset.classical_value;
    match solve_zero_sum_with(&config.payoff, opts) {
        Ok(sol) => {
            let minimax = sol.satisfies_minimax(&config.payoff, VALUE_TOL);
            let pass = (sol.value - expected).abs() <= VALUE_TOL && minimax;
            let detail = format!(
                "value {:.12}, expected {expected:.12}, minimax inequalities {}",
                sol.value,
                if minimax { "hold" } else { "violated" }
            );
            Outcome::new(preset.name, "classical", pass, detail)
        }
        Err(e) => Outcome::new(preset.name, "classical", false, format!("solver error: {e}")),
    }
}

fn surface_check(name: &str, config: &GameConfig, check: SurfaceCheck) -> Result<Outcome> {
    let game = config.game()?;
    let surface = qgame::sample_surface(&game, config.resolution)?;
    let outcome = match check {
        SurfaceCheck::Near { p, q, value } => {
            let nearest = |grid: &[f64], x: f64| {
                (0..grid.len()).min_by(|&a, &b| (grid[a] - x).abs().total_cmp(&(grid[b] - x).abs())).unwrap()
            };
            let (i, j) = (nearest(&surface.p_grid, p), nearest(&surface.q_grid, q));
            let got = surface.get(i, j);
            Outcome::new(
                name,
                "surface",
                (got - value).abs() <= SURFACE_TOL,
                format!(
                    "{}x{} grid, nearest point ({:.6}, {:.6}) has {got:.9}, expected {value:.9} within {SURFACE_TOL:e}",
                    surface.p_grid.len(),
                    surface.q_grid.len(),
                    surface.p_grid[i],
                    surface.q_grid[j]
                ),
            )
        }
        SurfaceCheck::Domain { p_min, q_min } => {
            let span = |g: &[f64]| (g[0], *g.last().unwrap());
            let (ps, qs) = (span(&surface.p_grid), span(&surface.q_grid));
            let ok = (ps.0 - p_min).abs() <= 1e-15
                && (qs.0 - q_min).abs() <= 1e-15
                && ps.1 == 1.0
                && qs.1 == 1.0
                && surface.values.iter().all(|v| v.is_finite());
            Outcome::new(
                name,
                "surface",
                ok,
                format!("grid spans p in [{}, {}], q in [{}, {}]", ps.0, ps.1, qs.0, qs.1),
            )
        }
    };
    Ok(outcome)
}
