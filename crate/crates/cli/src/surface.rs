//! Payoff-surface export.
//!
//! ```text
//! # game: 2x3
//! # domain_p: [0, 1]
//! ...
//! p,q,payoff_A
//! 0.00000000000e0,1.11111111111e-1,2.44444444444e0
//! ```
//!
//! Rows run over `q` fastest. Numbers carry 12 significant digits.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qgame::PayoffSurface;

use crate::config::GameConfig;
use crate::error::{CliError, Result};

pub const HEADER: &str = "p,q,payoff_A";

/// 12 significant digits in scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn render_surface(config: &GameConfig, surface: &PayoffSurface) -> String {
    let mut out = String::new();
    for (k, v) in metadata(config, surface) {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out.push_str(HEADER);
    out.push('\n');
    let m = surface.q_grid.len();
    for (i, &p) in surface.p_grid.iter().enumerate() {
        for (j, &q) in surface.q_grid.iter().enumerate() {
            let v = surface.values[i * m + j];
            let _ = writeln!(out, "{},{},{}", fmt12(p), fmt12(q), fmt12(v));
        }
    }
    out
}

fn metadata(config: &GameConfig, surface: &PayoffSurface) -> Vec<(&'static str, String)> {
    let (n, m) = config.payoff.shape();
    let dom = |g: &[f64]| format!("[{}, {}]", fmt12(g[0]), fmt12(*g.last().unwrap()));
    vec![
        ("game", format!("{n}x{m}")),
        ("payoff", crate::report::fmt_matrix(&config.payoff.to_rows())),
        ("state", crate::report::fmt_list(config.state.coeffs())),
        ("convention", format!("{:?}", config.convention).to_lowercase()),
        ("domain_p", dom(&surface.p_grid)),
        ("domain_q", dom(&surface.q_grid)),
        (
            "domain_note",
            "parameters below ((N-2)/N)^2 are excluded; the restricted operator is not unitary there".into(),
        ),
        ("resolution", format!("{}x{}", surface.p_grid.len(), surface.q_grid.len())),
        ("tool", format!("qgame {}", env!("CARGO_PKG_VERSION"))),
    ]
}

/// Parsed surface file.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFile {
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<[f64; 3]>,
}

impl SurfaceFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Value at the grid point closest to `(p, q)`.
    pub fn nearest(&self, p: f64, q: f64) -> Option<[f64; 3]> {
        self.rows
            .iter()
            .copied()
            .min_by(|a, b| {
                let da = (a[0] - p).hypot(a[1] - q);
                let db = (b[0] - p).hypot(b[1] - q);
                da.total_cmp(&db)
            })
    }
}

pub fn parse_surface(text: &str) -> Result<SurfaceFile> {
    let mut metadata = Vec::new();
    let mut rows = Vec::new();
    let mut seen_header = false;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(meta) = line.strip_prefix('#') {
            if let Some((k, v)) = meta.split_once(':') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if !seen_header {
            if line.trim() != HEADER {
                return Err(CliError::Parse { line: line_no, column: 1, message: format!("expected header {HEADER:?}") });
            }
            seen_header = true;
            continue;
        }
        let mut row = [0.0; 3];
        let mut fields = line.split(',');
        for (k, slot) in row.iter_mut().enumerate() {
            let field = fields.next().ok_or_else(|| CliError::Parse {
                line: line_no,
                column: 1,
                message: format!("expected 3 fields, found {k}"),
            })?;
            *slot = field.trim().parse().map_err(|e| CliError::Parse {
                line: line_no,
                column: 1,
                message: format!("field {}: {e}", k + 1),
            })?;
        }
        if fields.next().is_some() {
            return Err(CliError::Parse { line: line_no, column: 1, message: "more than 3 fields".into() });
        }
        rows.push(row);
    }
    if !seen_header {
        return Err(CliError::Parse { line: 1, column: 1, message: "missing header".into() });
    }
    Ok(SurfaceFile { metadata, rows })
}

/// Companion gnuplot script path: `surface.csv` -> `surface.gp`.
pub fn plot_script_path(data: &Path) -> PathBuf {
    data.with_extension("gp")
}

pub fn render_plot_script(data: &Path, config: &GameConfig, surface: &PayoffSurface) -> String {
    let (n, m) = config.payoff.shape();
    let file = data.file_name().map_or_else(|| data.display().to_string(), |f| f.to_string_lossy().into_owned());
    let png = data.with_extension("png");
    let png = png.file_name().map_or_else(|| "surface.png".into(), |f| f.to_string_lossy().into_owned());
    format!(
        "# Renders {file}; run from the directory containing it: gnuplot {script}\n\
         set datafile separator ','\n\
         set datafile commentschars '#'\n\
         set terminal pngcairo size 900,700\n\
         set output '{png}'\n\
         set title 'P_A(p,q), {n}x{m} game, state {state}'\n\
         set xlabel 'p'\n\
         set ylabel 'q'\n\
         set zlabel 'P_A'\n\
         set xrange [{p0}:{p1}]\n\
         set yrange [{q0}:{q1}]\n\
         set dgrid3d {np},{nq}\n\
         set pm3d\n\
         set hidden3d\n\
         set key autotitle columnhead\n\
         splot '{file}' using 1:2:3 with lines notitle\n",
        script = plot_script_path(Path::new(&file)).display(),
        state = crate::report::fmt_list(config.state.coeffs()),
        p0 = surface.p_grid[0],
        p1 = surface.p_grid[surface.p_grid.len() - 1],
        q0 = surface.q_grid[0],
        q1 = surface.q_grid[surface.q_grid.len() - 1],
        np = surface.p_grid.len(),
        nq = surface.q_grid.len(),
    )
}

/// Samples the configured surface and writes the data file plus its plot
/// script. Returns the surface for further checks.
pub fn run_surface(config: &GameConfig, out: &Path) -> Result<PayoffSurface> {
    let game = config.game()?;
    let surface = qgame::sample_surface(&game, config.resolution)?;
    std::fs::write(out, render_surface(config, &surface)).map_err(|e| CliError::io(out, e))?;
    let script = plot_script_path(out);
    std::fs::write(&script, render_plot_script(out, config, &surface)).map_err(|e| CliError::io(&script, e))?;
    Ok(surface)
}
