//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use qgame::{EquilibriumStatus, Game, PayoffMatrix, SchmidtState};
use rand::Rng;

const POINT_TOL: f64 = 1e-6;
const VALUE_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-10;
const PROBABILITY_TOL: f64 = 1e-12;
const INFORMATIONAL_TOL: f64 = 1e-8;
const UNITARY_TOL: f64 = 1e-12;
const FP_TOL: f64 = 2e-2;
const FP_ITERATIONS: usize = 1_000_000;
const GRID: usize = 1001;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn game(payoff: PayoffMatrix, state: &[f64]) -> Game {
    Game::new(payoff, SchmidtState::new(state.to_vec()).unwrap()).unwrap()
}

fn c1_two_by_three_product() -> Verdict {
    let g = game(eq1(), &[1.0, 0.0]);
    let t = Instant::now();
    let r = qgame::find_equilibrium(&g).unwrap();
    let elapsed = t.elapsed();
    let (p, q) = r.point.unwrap_or((f64::NAN, f64::NAN));
    let v = r.value.unwrap_or(f64::NAN);
    let pass = r.status == EquilibriumStatus::InteriorSaddle
        && (p - 10.0 / 13.0).abs() <= POINT_TOL
        && (q - 5.0 / 13.0).abs() <= POINT_TOL
        && (v - 14.0 / 13.0).abs() <= VALUE_TOL
        && elapsed < Duration::from_secs(1);
    verdict(pass, format!("{} at ({p:.12}, {q:.12}) value {v:.12}, expected (10/13, 5/13) value 14/13, {elapsed:.2?}", r.status))
}

fn c2_two_by_three_second_product() -> Verdict {
    let g = game(eq1(), &[0.0, 1.0]);
    let r = qgame::find_equilibrium(&g).unwrap();
    let v = r.value.unwrap_or(f64::NAN);
    let point = r.point.map_or("none".to_string(), |(p, q)| format!("({p:.9}, {q:.9})"));
    verdict(
        (v - 0.0).abs() <= VALUE_TOL,
        format!(
            "{} at {point} value {v:.12}, expected 0; the payoff is q(p+3) and q >= 1/9 on the feasible domain",
            r.status
        ),
    )
}

fn c3_three_by_three_product() -> Verdict {
    let g = game(eq10(), &[1.0, 0.0, 0.0]);
    let r = qgame::find_equilibrium(&g).unwrap();
    let (p, q) = r.point.unwrap_or((f64::NAN, f64::NAN));
    let v = r.value.unwrap_or(f64::NAN);
    let pass = r.status == EquilibriumStatus::InteriorSaddle
        && (p - 5.0 / 9.0).abs() <= POINT_TOL
        && (q - 1.0 / 3.0).abs() <= POINT_TOL
        && (v - 4.0 / 3.0).abs() <= VALUE_TOL;
    verdict(pass, format!("{} at ({p:.12}, {q:.12}) value {v:.12}, expected (5/9, 1/3) value 4/3", r.status))
}

/// Grid points that are mutual best responses within twice the largest
/// change between neighbouring grid points. Any true equilibrium leaves
/// such a point next to it.
fn grid_check(g: &Game) -> (usize, f64, f64, f64) {
    let s = qgame::sample_surface(g, GRID).unwrap();
    let mut step: f64 = 0.0;
    for i in 0..GRID {
        for j in 0..GRID {
            if i + 1 < GRID {
                step = step.max((s.get(i + 1, j) - s.get(i, j)).abs());
            }
            if j + 1 < GRID {
                step = step.max((s.get(i, j + 1) - s.get(i, j)).abs());
            }
        }
    }
    (s.grid_equilibria(2.0 * step).len(), 2.0 * step, s.lower_value(), s.upper_value())
}

fn c4_entangled_non_existence() -> Verdict {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = 1.0 / 3f64.sqrt();
    let cases = [
        ("3x3 uniform", eq10(), vec![t, t, t]),
        ("3x3 pair", eq10(), vec![h, h, 0.0]),
        ("2x3 pair", eq1(), vec![h, h]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, payoff, state) in cases {
        let g = game(payoff, &state);
        let start = Instant::now();
        let r = qgame::find_equilibrium(&g).unwrap();
        let (grid_eq, tol, lower, upper) = grid_check(&g);
        let elapsed = start.elapsed();
        let ok = r.interior_saddles.is_empty() && grid_eq == 0 && elapsed < Duration::from_secs(30);
        pass &= ok;
        parts.push(format!(
            "{name}: {} interior saddles of {} candidates, {grid_eq} grid equilibria at tol {tol:.1e}, grid max-min {lower:.6} < min-max {upper:.6}, {elapsed:.2?}",
            r.interior_saddles.len(),
            r.candidates_examined
        ));
    }
    // Control: the same grid check does find the product-state saddle.
    let (control, _, _, _) = grid_check(&game(eq1(), &[1.0, 0.0]));
    pass &= control > 0;
    parts.push(format!("control 2x3 product: {control} grid equilibria"));
    verdict(pass, parts.join("; "))
}

fn c5_closed_forms() -> Verdict {
    let mut rng = rng(5);
    let g8 = game(eq1(), &[1.0, 0.0]);
    let g12 = game(eq10(), &[1.0, 0.0, 0.0]);
    let (mut d8, mut d12): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let (p, q) = (rng.gen_range(0.0..=1.0), rng.gen_range(1.0 / 9.0..=1.0));
        d8 = d8.max((g8.payoff_at(p, q).unwrap() - two_by_three_product(p, q)).abs());
        let (p, q) = (rng.gen_range(1.0 / 9.0..=1.0), rng.gen_range(1.0 / 9.0..=1.0));
        d12 = d12.max((g12.payoff_at(p, q).unwrap() - three_by_three_product(p, q)).abs());
    }
    let mut dx: f64 = 0.0;
    for k in 0..20 {
        let a0: f64 = if k == 0 { 1.0 } else { rng.gen_range(0.0..=1.0) };
        let a1 = (1.0 - a0 * a0).max(0.0).sqrt();
        let g = game(eq1(), &[a0, a1]);
        for i in 0..50 {
            for j in 0..50 {
                let p = i as f64 / 49.0;
                let q = 1.0 / 9.0 + (8.0 / 9.0) * j as f64 / 49.0;
                let x = g.probabilities(p, q).unwrap();
                let want = two_by_three_probabilities(a0, a1, p, q);
                for (n, w) in want.iter().enumerate() {
                    dx = dx.max((x.get(n / 3, n % 3) - w).abs());
                }
            }
        }
    }
    verdict(
        d8 <= CLOSED_FORM_TOL && d12 <= CLOSED_FORM_TOL && dx <= PROBABILITY_TOL,
        format!(
            "2x3 product payoff max dev {d8:.2e}, 3x3 product payoff {d12:.2e} (tol {CLOSED_FORM_TOL:e}); six probabilities on 50x50 grid x 20 states {dx:.2e} (tol {PROBABILITY_TOL:e})"
        ),
    )
}

fn c6_classical() -> Verdict {
    let (a, b) = (eq1(), eq10());
    let sa = qgame::solve_zero_sum(&a).unwrap();
    let sb = qgame::solve_zero_sum(&b).unwrap();
    let fa = qgame::fictitious_play(&a, FP_ITERATIONS).unwrap();
    let fb = qgame::fictitious_play(&b, FP_ITERATIONS).unwrap();
    let pass = sa.value.abs() <= VALUE_TOL
        && (sb.value - 4.0 / 3.0).abs() <= VALUE_TOL
        && sa.satisfies_minimax(&a, VALUE_TOL)
        && sb.satisfies_minimax(&b, VALUE_TOL)
        && (fa.value - sa.value).abs() <= FP_TOL
        && (fb.value - sb.value).abs() <= FP_TOL;
    verdict(
        pass,
        format!(
            "2x3 value {:.3e} (fictitious play {:.6}), 3x3 value {:.12} (fictitious play {:.6}), minimax inequalities {}",
            sa.value,
            fa.value,
            sb.value,
            fb.value,
            if sa.satisfies_minimax(&a, VALUE_TOL) && sb.satisfies_minimax(&b, VALUE_TOL) { "hold" } else { "violated" }
        ),
    )
}

fn c7_unitarity() -> Verdict {
    let mut rng = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let dim = rng.gen_range(2..=6);
        let p_min = ((dim as f64 - 2.0) / dim as f64).powi(2);
        let p = rng.gen_range(p_min..=1.0);
        worst = worst.max(qgame::build_unitary(p, dim).unwrap().unitarity_defect());
    }
    let mut theta_worst: f64 = 0.0;
    for n in 3..=6usize {
        let p_min = ((n as f64 - 2.0) / n as f64).powi(2);
        theta_worst = theta_worst.max(qgame::theta(p_min, n).unwrap().abs());
    }
    verdict(
        worst < UNITARY_TOL && theta_worst < UNITARY_TOL,
        format!("max |U^H U - I| {worst:.2e} over 1000 samples; max |theta(p_min)| {theta_worst:.2e} for N = 3..6"),
    )
}

fn c8_informational() -> Verdict {
    let mut rng = rng(8);
    let t = 1.0 / 3f64.sqrt();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let states = [[t, t, t], [h, h, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let (mut general, mut uniform): (f64, f64) = (0.0, 0.0);
    let (mut norm, mut unit, mut bilinear): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for a in states {
        let g = game(eq10(), &a);
        let entangled = a.iter().filter(|&&x| x > 0.0).count() > 1;
        let corner = |p, q| g.payoff_at(p, q).unwrap();
        let (lo, hi) = (1.0 / 9.0, 1.0);
        for _ in 0..100 {
            let (p, q) = (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi));
            let v = g.payoff_at(p, q).unwrap();
            general = general.max((v - three_by_three_general(a[0], a[1], a[2], p, q)).abs());
            if a == [t, t, t] {
                uniform = uniform.max((v - three_by_three_uniform(p, q)).abs());
            }
            norm = norm.max((g.probabilities(p, q).unwrap().total() - 1.0).abs());
            unit = unit.max(g.unitary_a(p).unwrap().unitarity_defect());
            if !entangled {
                let (s, r) = ((p - lo) / (hi - lo), (q - lo) / (hi - lo));
                let interp = (1.0 - s) * (1.0 - r) * corner(lo, lo)
                    + s * (1.0 - r) * corner(hi, lo)
                    + (1.0 - s) * r * corner(lo, hi)
                    + s * r * corner(hi, hi);
                bilinear = bilinear.max((v - interp).abs());
            }
        }
    }
    if general > INFORMATIONAL_TOL || uniform > INFORMATIONAL_TOL {
        println!(
            "finding: published three-term 3x3 payoff deviates from the engine by up to {general:.3e}, uniform-state form by {uniform:.3e} (tol {INFORMATIONAL_TOL:e}); transcription error suspected"
        );
    }
    verdict(
        norm < UNITARY_TOL && unit < UNITARY_TOL && bilinear < CLOSED_FORM_TOL,
        format!(
            "binding: normalization {norm:.2e}, unitarity {unit:.2e}, product-state bilinearity {bilinear:.2e}; informational: general form {general:.2e}, uniform form {uniform:.2e}"
        ),
    )
}

fn c9_reproduce() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qgame")).arg("reproduce").output().unwrap();
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).map(|l| l.split_whitespace().nth(1).unwrap_or("")).collect();
    verdict(
        out.status.success() && elapsed < Duration::from_secs(120),
        format!("exit {:?} in {elapsed:.2?}; failing scenarios: {failed:?}", out.status.code()),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 2x3 product-state equilibrium", c1_two_by_three_product),
        ("2 2x3 second product state value", c2_two_by_three_second_product),
        ("3 3x3 product-state equilibrium", c3_three_by_three_product),
        ("4 no equilibrium under entanglement", c4_entangled_non_existence),
        ("5 closed-form oracle match", c5_closed_forms),
        ("6 classical baseline", c6_classical),
        ("7 unitarity and feasibility bound", c7_unitarity),
        ("8 informational closed forms", c8_informational),
        ("9 reproduce exits 0", c9_reproduce),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let v = check();
        if !v.pass {
            failures += 1;
        }
        println!("{} criterion {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
