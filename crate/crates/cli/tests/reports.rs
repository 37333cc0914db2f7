use qgame::{EquilibriumStatus, PhaseConvention};
use qgame_cli::presets::{find_preset, PRESETS};
use qgame_cli::report::{equilibrium_pairs, parse_kv, render, run_equilibrium, Comparison};
use qgame_cli::reproduce::{run_preset, run_reproduce, ReproduceOptions, Verdict};
use qgame_cli::{GameConfig, OutputFormat};

const EQ1: [[f64; 3]; 2] = [[2.0, 3.0, -2.0], [-2.0, 4.0, 2.0]];

fn two_by_three(state: &[f64]) -> GameConfig {
    GameConfig::new(EQ1.iter().map(|r| r.to_vec()).collect(), state.to_vec()).unwrap()
}

fn lookup<'a>(kv: &'a [(String, String)], key: &str) -> &'a str {
    &kv.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("missing {key}")).1
}

#[test]
fn product_state_differs_from_classical() {
    let cfg = two_by_three(&[1.0, 0.0]);
    let run = run_equilibrium(&cfg).unwrap();
    assert_eq!(run.comparison, Comparison::Differs);
    let kv = parse_kv(&render(&equilibrium_pairs(&cfg, &run), OutputFormat::Kv));
    assert_eq!(lookup(&kv, "equilibrium.status"), "interior-saddle");
    let p: f64 = lookup(&kv, "equilibrium.p").parse().unwrap();
    let v: f64 = lookup(&kv, "equilibrium.value_A").parse().unwrap();
    assert!((p - 10.0 / 13.0).abs() < 1e-6);
    assert!((v - 14.0 / 13.0).abs() < 1e-9);
    // Round-trip of the printed value is exact.
    assert_eq!(v, run.report.value.unwrap());
    assert_eq!(lookup(&kv, "comparison"), "differs");
}

#[test]
fn second_product_state_is_a_boundary_equilibrium() {
    // The feasible rectangle excludes q = 0, where the value would be 0.
    let run = run_equilibrium(&two_by_three(&[0.0, 1.0])).unwrap();
    assert_eq!(run.report.status, EquilibriumStatus::BoundaryEquilibrium);
    assert!((run.report.value.unwrap() - 4.0 / 9.0).abs() < 1e-9);
    assert_eq!(run.comparison, Comparison::Differs);
}

#[test]
fn entangled_pair_has_no_saddle() {
    let cfg = find_preset("3x3-entangled-pair").unwrap().config().unwrap();
    let run = run_equilibrium(&cfg).unwrap();
    assert!(run.report.interior_saddles.is_empty());
    assert_eq!(run.comparison, Comparison::NoQuantumEquilibrium);
    let kv = equilibrium_pairs(&cfg, &run);
    assert!(kv.iter().all(|(k, _)| k != "equilibrium.p"));
}

#[test]
fn three_by_three_product_equals_classical() {
    let run = run_equilibrium(&find_preset("fig2").unwrap().config().unwrap()).unwrap();
    assert_eq!(run.comparison, Comparison::Equal);
}

#[test]
fn reproduce_reports_every_preset() {
    let summary = run_reproduce(&ReproduceOptions::default()).unwrap();
    for p in PRESETS {
        assert!(summary.outcomes.iter().any(|o| o.scenario == p.name), "{}", p.name);
    }
    for name in ["fig1", "2x3-entangled", "fig2", "fig3", "3x3-entangled-pair"] {
        assert!(summary.scenario_passed(name), "{}", summary.render());
    }
    assert_eq!(summary.outcome("fig3", "closed-form").unwrap().verdict, Verdict::Note);
    assert!(summary.render().contains("check(s)"));
}

#[test]
fn flipped_interference_sign_fails_entangled_preset() {
    let options = ReproduceOptions { convention: PhaseConvention::Uniform, ..Default::default() };
    let outcomes = run_preset(find_preset("2x3-entangled").unwrap(), &options).unwrap();
    let cf = outcomes.iter().find(|o| o.check == "closed-form").unwrap();
    assert_eq!(cf.verdict, Verdict::Fail, "{}", cf.line());
    // Product states do not see the phase.
    let fig1 = run_preset(find_preset("fig1").unwrap(), &options).unwrap();
    assert!(fig1.iter().all(|o| o.verdict == Verdict::Pass));
}

#[test]
fn unshifted_simplex_fails_classical_preset() {
    let options = ReproduceOptions { shift_to_positive: false, ..Default::default() };
    let outcomes = run_preset(find_preset("fig1").unwrap(), &options).unwrap();
    let classical = outcomes.iter().find(|o| o.check == "classical").unwrap();
    assert_eq!(classical.verdict, Verdict::Fail, "{}", classical.line());
}
