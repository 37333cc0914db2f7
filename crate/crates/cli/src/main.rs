use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qgame::PhaseConvention;
use qgame_cli::config::{parse_config, parse_convention, GameConfig, OutputFormat};
use qgame_cli::error::{CliError, Result};
use qgame_cli::reproduce::{run_reproduce, ReproduceOptions, Verdict};
use qgame_cli::{presets, report, surface, verify};

/// Restricted-strategy quantum games: payoff surfaces, equilibria and
/// classical baselines.
#[derive(Debug, Parser)]
#[command(name = "qgame", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the payoff surface over the feasible domain and write CSV plus a gnuplot script.
    Surface(SurfaceArgs),
    /// Search for an equilibrium and compare it with the classical value.
    Equilibrium(ReportArgs),
    /// Solve the classical mixed-strategy game.
    Classical(ClassicalArgs),
    /// Check the engine's structural invariants.
    Verify(VerifyArgs),
    /// Run every built-in scenario against its expected results.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct GameArgs {
    /// TOML game configuration.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Built-in scenario name.
    #[arg(long)]
    preset: Option<String>,
    /// Grid points per axis.
    #[arg(long)]
    resolution: Option<usize>,
    /// Phase convention of the two-strategy operator: paper or uniform.
    #[arg(long, value_parser = parse_convention)]
    convention: Option<PhaseConvention>,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Output CSV path; the plot script is written next to it.
    #[arg(long, default_value = "surface.csv")]
    out: PathBuf,
    /// Only csv is supported for surfaces.
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Write the machine-readable report here; the summary goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
struct ClassicalArgs {
    #[command(flatten)]
    report: ReportArgs,
    /// Also run fictitious play for this many rounds.
    #[arg(long)]
    iterations: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_convention, default_value = "paper")]
    convention: PhaseConvention,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(long, value_parser = parse_convention, default_value = "paper")]
    convention: PhaseConvention,
    /// Solve classical games without shifting entries positive.
    #[arg(long)]
    unshifted: bool,
    #[arg(long, default_value_t = qgame_cli::config::DEFAULT_RESOLUTION)]
    resolution: usize,
}

fn load(args: &GameArgs) -> Result<GameConfig> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_config(&text)?
        }
        (None, Some(name)) => presets::find_preset(name)?.config()?,
        (None, None) => return Err(CliError::Validation("one of --config or --preset is required".into())),
    };
    if let Some(r) = args.resolution {
        cfg = cfg.with_resolution(r)?;
    }
    if let Some(c) = args.convention {
        cfg.convention = c;
    }
    Ok(cfg)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// With `--out` the document goes to the file and the summary to stdout;
/// otherwise the document goes to stdout and the summary to stderr.
fn emit(out: Option<&Path>, document: &str, summary: &str) -> Result<()> {
    match out {
        Some(path) => {
            write_file(path, document)?;
            print!("{summary}");
        }
        None => {
            print!("{document}");
            eprint!("{summary}");
        }
    }
    std::io::stdout().flush().map_err(|e| CliError::io("<stdout>", e))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Surface(args) => {
            if args.format == Some(OutputFormat::Kv) {
                return Err(CliError::Validation("surface output is always csv".into()));
            }
            let cfg = load(&args.game)?;
            let s = surface::run_surface(&cfg, &args.out)?;
            println!(
                "wrote {} ({}x{} points, P_A in [{:.6}, {:.6}]) and {}",
                args.out.display(),
                s.p_grid.len(),
                s.q_grid.len(),
                s.min_value(),
                s.max_value(),
                surface::plot_script_path(&args.out).display()
            );
            Ok(())
        }
        Command::Equilibrium(args) => {
            let cfg = load(&args.game)?;
            let format = args.format.unwrap_or(cfg.format);
            let run = report::run_equilibrium(&cfg)?;
            let doc = report::render(&report::equilibrium_pairs(&cfg, &run), format);
            emit(args.out.as_deref(), &doc, &report::render_equilibrium_text(&cfg, &run))
        }
        Command::Classical(args) => {
            let cfg = load(&args.report.game)?;
            let format = args.report.format.unwrap_or(cfg.format);
            let sol = qgame::solve_zero_sum(&cfg.payoff)?;
            let fp = args.iterations.map(|n| qgame::fictitious_play(&cfg.payoff, n)).transpose()?;
            let doc = report::render(&report::classical_report_pairs(&cfg, &sol, fp.as_ref()), format);
            let mut summary = format!(
                "classical value {:.9}, A plays {}, B plays {}\n",
                sol.value,
                report::fmt_list(sol.row_strategy.weights()),
                report::fmt_list(sol.col_strategy.weights())
            );
            if let Some(fp) = &fp {
                summary.push_str(&format!(
                    "fictitious play: value in [{:.6}, {:.6}]\n",
                    fp.value_bounds.0, fp.value_bounds.1
                ));
            }
            emit(args.report.out.as_deref(), &doc, &summary)
        }
        Command::Verify(args) => {
            let outcomes = verify::run_verify(args.convention)?;
            for o in &outcomes {
                println!("{}", o.line());
            }
            match outcomes.iter().filter(|o| o.verdict == Verdict::Fail).count() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
        Command::Reproduce(args) => {
            let options = ReproduceOptions {
                convention: args.convention,
                shift_to_positive: !args.unshifted,
                resolution: args.resolution,
            };
            let summary = run_reproduce(&options)?;
            print!("{}", summary.render());
            match summary.failures() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
