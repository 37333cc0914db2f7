//! Built-in scenarios with their expected results.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::config::GameConfig;
use crate::error::{CliError, Result};

const TWO_BY_THREE: &[&[f64]] = &[&[2.0, 3.0, -2.0], &[-2.0, 4.0, 2.0]];
const THREE_BY_THREE: &[&[f64]] = &[&[2.0, 0.0, 2.0], &[0.0, 3.0, 1.0], &[1.0, 2.0, 1.0]];
const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;

/// Tolerance on the location of an expected equilibrium.
pub const POINT_TOL: f64 = 1e-6;
/// Tolerance on expected payoff values.
pub const VALUE_TOL: f64 = 1e-9;
/// Tolerance for binding closed-form comparisons.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// Tolerance for informational closed-form comparisons.
pub const INFORMATIONAL_TOL: f64 = 1e-8;
/// Tolerance for surface spot checks on the default grid.
pub const SURFACE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    /// An equilibrium at this point with this value for player A.
    Saddle { p: f64, q: f64, value: f64 },
    /// Some equilibrium with this value for player A.
    Value(f64),
    /// No interior critical point survives saddle classification.
    NoInteriorSaddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// A mismatch fails the scenario.
    Binding,
    /// A mismatch is reported as a finding only.
    Informational,
}

#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    pub description: &'static str,
    pub role: Role,
    pub eval: fn(f64, f64) -> f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceCheck {
    /// Grid point nearest `(p, q)` holds `value` within [`SURFACE_TOL`].
    Near { p: f64, q: f64, value: f64 },
    /// The grid spans exactly `[p_min, 1] x [q_min, 1]`.
    Domain { p_min: f64, q_min: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct ScenarioPreset {
    pub name: &'static str,
    pub summary: &'static str,
    pub payoff: &'static [&'static [f64]],
    pub state: &'static [f64],
    pub expectation: Expectation,
    /// Where the expected equilibrium result comes from.
    pub provenance: &'static str,
    pub closed_form: ClosedForm,
    pub classical_value: f64,
    pub surface: Option<SurfaceCheck>,
}

impl ScenarioPreset {
    pub fn config(&self) -> Result<GameConfig> {
        GameConfig::new(self.payoff.iter().map(|r| r.to_vec()).collect(), self.state.to_vec())
    }
}

pub const PRESETS: &[ScenarioPreset] = &[
    ScenarioPreset {
        name: "fig1",
        summary: "2x3 game, product state |11>",
        payoff: TWO_BY_THREE,
        state: &[1.0, 0.0],
        expectation: Expectation::Saddle { p: 10.0 / 13.0, q: 5.0 / 13.0, value: 14.0 / 13.0 },
        provenance: "published saddle of the 2x3 product-state surface",
        closed_form: ClosedForm {
            description: "bilinear product-state payoff 6.5pq - 2.5p - 5q + 3",
            role: Role::Binding,
            eval: two_by_three_product,
        },
        classical_value: 0.0,
        surface: Some(SurfaceCheck::Near { p: 10.0 / 13.0, q: 5.0 / 13.0, value: 14.0 / 13.0 }),
    },
    ScenarioPreset {
        name: "2x3-product-b",
        summary: "2x3 game, product state |22>",
        payoff: TWO_BY_THREE,
        state: &[0.0, 1.0],
        expectation: Expectation::Value(0.0),
        provenance: "published claim that the quantum value equals the classical value 0",
        closed_form: ClosedForm {
            description: "two-term payoff with a = (0, 1), reducing to q(p + 3)",
            role: Role::Binding,
            eval: two_by_three_second_product,
        },
        classical_value: 0.0,
        surface: None,
    },
    ScenarioPreset {
        name: "2x3-entangled",
        summary: "2x3 game, entangled state (|11> + |22>)/sqrt2",
        payoff: TWO_BY_THREE,
        state: &[FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        expectation: Expectation::NoInteriorSaddle,
        provenance: "published claim that no equilibrium exists for the entangled 2x3 state",
        closed_form: ClosedForm {
            description: "two-term payoff with interference term at a = (1/sqrt2, 1/sqrt2)",
            role: Role::Binding,
            eval: two_by_three_entangled,
        },
        classical_value: 0.0,
        surface: None,
    },
    ScenarioPreset {
        name: "fig2",
        summary: "3x3 game, product state |11>",
        payoff: THREE_BY_THREE,
        state: &[1.0, 0.0, 0.0],
        expectation: Expectation::Saddle { p: 5.0 / 9.0, q: 1.0 / 3.0, value: 4.0 / 3.0 },
        provenance: "published saddle of the 3x3 product-state surface",
        closed_form: ClosedForm {
            description: "bilinear product-state payoff 2.25pq - 0.75p - 1.25q + 1.75",
            role: Role::Binding,
            eval: three_by_three_product,
        },
        classical_value: 4.0 / 3.0,
        surface: Some(SurfaceCheck::Near { p: 5.0 / 9.0, q: 1.0 / 3.0, value: 4.0 / 3.0 }),
    },
    ScenarioPreset {
        name: "fig3",
        summary: "3x3 game, uniform entangled state",
        payoff: THREE_BY_THREE,
        state: &[FRAC_1_SQRT_3, FRAC_1_SQRT_3, FRAC_1_SQRT_3],
        expectation: Expectation::NoInteriorSaddle,
        provenance: "published claim that no saddle exists for the uniform 3x3 state",
        closed_form: ClosedForm {
            description: "published uniform-state 3x3 payoff",
            role: Role::Informational,
            eval: three_by_three_uniform,
        },
        classical_value: 4.0 / 3.0,
        surface: Some(SurfaceCheck::Domain { p_min: 1.0 / 9.0, q_min: 1.0 / 9.0 }),
    },
    ScenarioPreset {
        name: "3x3-entangled-pair",
        summary: "3x3 game, state (|11> + |22>)/sqrt2",
        payoff: THREE_BY_THREE,
        state: &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
        expectation: Expectation::NoInteriorSaddle,
        provenance: "published claim that no saddle exists for the two-term 3x3 state",
        closed_form: ClosedForm {
            description: "published general three-term 3x3 payoff at a = (1/sqrt2, 1/sqrt2, 0)",
            role: Role::Informational,
            eval: three_by_three_pair,
        },
        classical_value: 4.0 / 3.0,
        surface: None,
    },
];

pub fn find_preset(name: &str) -> Result<&'static ScenarioPreset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        CliError::Validation(format!("unknown preset {name:?}; available: {}", names.join(", ")))
    })
}

fn theta3(x: f64) -> f64 {
    (0.5 * ((1.0 - x) / (2.0 * x)).sqrt()).acos()
}

fn two_by_three(a0: f64, a1: f64, p: f64, q: f64) -> f64 {
    let (a0s, a1s) = (a0 * a0, a1 * a1);
    (6.5 * a0s + a1s) * p * q
        + 5.0 * SQRT_2 * theta3(q).sin() * a0 * a1 * (p * q * (1.0 - p) * (1.0 - q)).sqrt()
        - 2.5 * a0s * p
        + (3.0 * a1s - 5.0 * a0s) * q
        + 3.0 * a0s
}

fn two_by_three_product(p: f64, q: f64) -> f64 {
    6.5 * p * q - 2.5 * p - 5.0 * q + 3.0
}

fn two_by_three_second_product(p: f64, q: f64) -> f64 {
    two_by_three(0.0, 1.0, p, q)
}

fn two_by_three_entangled(p: f64, q: f64) -> f64 {
    two_by_three(FRAC_1_SQRT_2, FRAC_1_SQRT_2, p, q)
}

fn three_by_three_product(p: f64, q: f64) -> f64 {
    2.25 * p * q - 0.75 * p - 1.25 * q + 1.75
}

fn three_by_three_uniform(p: f64, q: f64) -> f64 {
    let (t1, t2) = (theta3(p), theta3(q));
    0.5 * p * q - 4.0 / 3.0 * p - 4.0 / 3.0 * q
        + 2.5
        + 16.0 / 3.0 * t1.cos() * t2.cos() * (p * q * (1.0 - p) * (1.0 - q)).sqrt()
        - 5.0 / 3.0 * (1.0 - p) * t2.cos() * (q * (1.0 - q)).sqrt()
        - 2.0 * (1.0 - q) * t1.cos() * (p * (1.0 - p)).sqrt()
}

fn three_by_three_general(a0: f64, a1: f64, a2: f64, p: f64, q: f64) -> f64 {
    let (t1, t2) = (theta3(p), theta3(q));
    let r = (p * q * (1.0 - p) * (1.0 - q)).sqrt();
    5.0 / 4.0
        + (3.0 * a0 * a2 + 2.0 * a1 * a2 + 3.0 * a1 * a0) * (t1 + t2).cos() * r
        + (2.0 * a0 * a2 + 3.0 * a1 * a2 + 3.0 * a1 * a0) * (t1 - t2).cos() * r
        - (2.0 * a1 * a0 + a0 * a2 + 2.0 * a1 * a2) * (1.0 - p) * t2.cos() * (q * (1.0 - q)).sqrt()
        - (a1 * a2 + 2.0 * a0 * a2 + 3.0 * a1 * a0) * (1.0 - q) * t1.cos() * (p * (1.0 - p)).sqrt()
        + 0.25 * a1 * a1
        + 0.5 * a0 * a0
        + (a1 * a2 + 0.5 * a1 * a0 + 1.5 * a0 * a2) * (1.0 - p * q)
        + (3.0 * a1 * a1 + 2.25 * a0 * a0 - 0.75 * a2 * a2) * p * q
        + (0.25 * a2 * a2 - 1.5 * a0 * a2 - a1 * a2 - a1 * a1 - 0.75 * a0 * a0) * (p + q)
        + 0.5 * (a1 * a1 - a0 * a0) * q
}

fn three_by_three_pair(p: f64, q: f64) -> f64 {
    three_by_three_general(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, p, q)
}
