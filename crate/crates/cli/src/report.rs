//! Equilibrium and classical reports.
//!
//! The machine-readable form is one `key = value` pair per line. Keys:
//!
//! | key | meaning |
//! |-----|---------|
//! | `game.shape` | `NxM` |
//! | `game.payoff` | payoff matrix of player A |
//! | `state` | Schmidt coefficients |
//! | `state.entangled` | `true` when more than one coefficient is nonzero |
//! | `domain.p`, `domain.q` | feasible parameter intervals |
//! | `equilibrium.status` | `interior-saddle`, `boundary-equilibrium` or `none` |
//! | `equilibrium.p`, `equilibrium.q` | reported point (absent when `none`) |
//! | `equilibrium.value_A`, `equilibrium.value_B` | payoffs at the point |
//! | `equilibrium.gradient_norm` | finite-difference gradient norm at the point |
//! | `equilibrium.gap_p`, `equilibrium.gap_q` | best-response gaps |
//! | `equilibrium.br_tol`, `equilibrium.grad_tol` | tolerances used |
//! | `equilibrium.candidates_examined` | interior and boundary candidates checked |
//! | `equilibrium.interior_saddles`, `equilibrium.boundary_equilibria` | counts |
//! | `equilibrium.saddle.K`, `equilibrium.boundary.K` | `[p, q, value]` of each |
//! | `classical.value_A` | minimax value of the matrix game |
//! | `classical.row_strategy`, `classical.col_strategy` | optimal mixed strategies |
//! | `comparison` | `equal`, `differs` or `no-quantum-equilibrium` |
//!
//! Floats are written in shortest round-trip form.

use std::fmt::Write as _;

use qgame::{EquilibriumFinder, EquilibriumReport, EquilibriumStatus, Solution};

use crate::config::{GameConfig, OutputFormat};
use crate::error::Result;

/// Quantum and classical values closer than this are reported as equal.
pub const COMPARE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Differs,
    NoQuantumEquilibrium,
}

impl Comparison {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Equal => "equal",
            Self::Differs => "differs",
            Self::NoQuantumEquilibrium => "no-quantum-equilibrium",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquilibriumRun {
    pub report: EquilibriumReport,
    pub classical: Solution,
    pub comparison: Comparison,
}

pub fn run_equilibrium(config: &GameConfig) -> Result<EquilibriumRun> {
    let game = config.game()?;
    let report = EquilibriumFinder::new(&game, config.settings)?.find()?;
    let classical = qgame::solve_zero_sum(&config.payoff)?;
    let comparison = match report.value {
        None => Comparison::NoQuantumEquilibrium,
        Some(v) if (v - classical.value).abs() <= COMPARE_TOL => Comparison::Equal,
        Some(_) => Comparison::Differs,
    };
    Ok(EquilibriumRun { report, classical, comparison })
}

/// Shortest round-trip form, switching to an exponent for very small or large
/// magnitudes.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| num(x)).collect();
    format!("[{}]", items.join(", "))
}

pub fn fmt_matrix(rows: &[Vec<f64>]) -> String {
    let items: Vec<String> = rows.iter().map(|r| fmt_list(r)).collect();
    format!("[{}]", items.join(", "))
}

fn game_pairs(config: &GameConfig) -> Vec<(String, String)> {
    let (n, m) = config.payoff.shape();
    let (da, db) = (
        qgame::feasible_domain::<f64>(n).expect("validated shape"),
        qgame::feasible_domain::<f64>(m).expect("validated shape"),
    );
    vec![
        ("game.shape".into(), format!("{n}x{m}")),
        ("game.payoff".into(), fmt_matrix(&config.payoff.to_rows())),
        ("state".into(), fmt_list(config.state.coeffs())),
        ("state.entangled".into(), config.state.is_entangled().to_string()),
        ("domain.p".into(), fmt_list(&[da.p_min, da.p_max])),
        ("domain.q".into(), fmt_list(&[db.p_min, db.p_max])),
    ]
}

fn classical_pairs(sol: &Solution) -> Vec<(String, String)> {
    vec![
        ("classical.value_A".into(), num(sol.value)),
        ("classical.value_B".into(), num(-sol.value)),
        ("classical.row_strategy".into(), fmt_list(sol.row_strategy.weights())),
        ("classical.col_strategy".into(), fmt_list(sol.col_strategy.weights())),
    ]
}

pub fn equilibrium_pairs(config: &GameConfig, run: &EquilibriumRun) -> Vec<(String, String)> {
    let r = &run.report;
    let mut kv = game_pairs(config);
    let mut push = |k: &str, v: String| kv.push((k.to_string(), v));
    push("equilibrium.status", r.status.to_string());
    if let (Some((p, q)), Some(v)) = (r.point, r.value) {
        push("equilibrium.p", num(p));
        push("equilibrium.q", num(q));
        push("equilibrium.value_A", num(v));
        push("equilibrium.value_B", num(-v));
    }
    if let Some(g) = r.gradient_norm {
        push("equilibrium.gradient_norm", num(g));
    }
    if let Some((gp, gq)) = r.best_response_gaps {
        push("equilibrium.gap_p", num(gp));
        push("equilibrium.gap_q", num(gq));
    }
    push("equilibrium.br_tol", num(r.br_tol));
    push("equilibrium.grad_tol", num(r.grad_tol));
    push("equilibrium.candidates_examined", r.candidates_examined.to_string());
    push("equilibrium.interior_saddles", r.interior_saddles.len().to_string());
    push("equilibrium.boundary_equilibria", r.boundary_equilibria.len().to_string());
    for (k, c) in r.interior_saddles.iter().enumerate() {
        push(&format!("equilibrium.saddle.{k}"), fmt_list(&[c.point.0, c.point.1, c.value]));
    }
    for (k, c) in r.boundary_equilibria.iter().enumerate() {
        push(&format!("equilibrium.boundary.{k}"), fmt_list(&[c.point.0, c.point.1, c.value]));
    }
    kv.extend(classical_pairs(&run.classical));
    kv.push(("comparison".into(), run.comparison.as_str().into()));
    kv
}

pub fn classical_report_pairs(config: &GameConfig, sol: &Solution, fp: Option<&Solution>) -> Vec<(String, String)> {
    let mut kv = vec![
        ("game.shape".into(), format!("{}x{}", config.payoff.rows(), config.payoff.cols())),
        ("game.payoff".into(), fmt_matrix(&config.payoff.to_rows())),
    ];
    kv.extend(classical_pairs(sol));
    if let Some(fp) = fp {
        kv.push(("fictitious_play.value_A".into(), num(fp.value)));
        kv.push(("fictitious_play.lower".into(), num(fp.value_bounds.0)));
        kv.push(("fictitious_play.upper".into(), num(fp.value_bounds.1)));
    }
    kv
}

pub fn render(pairs: &[(String, String)], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Kv => {
            for (k, v) in pairs {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        OutputFormat::Csv => {
            out.push_str("key,value\n");
            for (k, v) in pairs {
                let v = if v.contains([',', '"']) { format!("\"{}\"", v.replace('"', "\"\"")) } else { v.clone() };
                let _ = writeln!(out, "{k},{v}");
            }
        }
    }
    out
}

/// Parses a `key = value` document; blank lines and `#` comments are skipped.
pub fn parse_kv(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn render_equilibrium_text(config: &GameConfig, run: &EquilibriumRun) -> String {
    let r = &run.report;
    let (n, m) = config.payoff.shape();
    let mut out = String::new();
    let _ = writeln!(out, "{n}x{m} game, initial state {}", fmt_list(config.state.coeffs()));
    match (r.status, r.point, r.value) {
        (EquilibriumStatus::None, _, _) | (_, None, _) | (_, _, None) => {
            let _ = writeln!(out, "no equilibrium found ({} candidates examined)", r.candidates_examined);
        }
        (status, Some((p, q)), Some(v)) => {
            let _ = writeln!(out, "{status} at p = {p:.9}, q = {q:.9}");
            let _ = writeln!(out, "payoff A = {v:.9}, payoff B = {:.9}", -v);
        }
    }
    if r.interior_saddles.len() + r.boundary_equilibria.len() > 1 {
        let _ = writeln!(
            out,
            "{} interior saddle(s), {} boundary equilibrium point(s)",
            r.interior_saddles.len(),
            r.boundary_equilibria.len()
        );
    }
    let _ = writeln!(
        out,
        "classical minimax value {:.9} with A {} and B {}",
        run.classical.value,
        fmt_list(run.classical.row_strategy.weights()),
        fmt_list(run.classical.col_strategy.weights())
    );
    let _ = writeln!(out, "quantum vs classical: {}", run.comparison.as_str());
    out
}
