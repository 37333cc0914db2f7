//! Published closed forms, written out term by term. Nothing here calls
//! into the engine.
#![allow(dead_code)]

use std::f64::consts::SQRT_2;

pub const EQ1: [[f64; 3]; 2] = [[2.0, 3.0, -2.0], [-2.0, 4.0, 2.0]];
pub const EQ10: [[f64; 3]; 3] = [[2.0, 0.0, 2.0], [0.0, 3.0, 1.0], [1.0, 2.0, 1.0]];

pub fn eq1() -> qgame::PayoffMatrix {
    qgame::PayoffMatrix::new(EQ1.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn eq10() -> qgame::PayoffMatrix {
    qgame::PayoffMatrix::new(EQ10.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Phase of the three-strategy player, straight from its defining formula.
pub fn theta3(q: f64) -> f64 {
    (0.5 * ((1.0 - q) / (2.0 * q)).sqrt()).acos()
}

/// The six outcome probabilities of the 2x3 game, ordered
/// |11>, |12>, |13>, |21>, |22>, |23>.
pub fn two_by_three_probabilities(a0: f64, a1: f64, p: f64, q: f64) -> [f64; 6] {
    let s = SQRT_2 * theta3(q).sin() * a0 * a1 * (p * q * (1.0 - p) * (1.0 - q)).sqrt();
    let (a0s, a1s) = (a0 * a0, a1 * a1);
    [
        a0s * p * q + 0.5 * a1s * (1.0 - p) * (1.0 - q) + s,
        0.5 * a0s * p * (1.0 - q) + a1s * q * (1.0 - p) - s,
        0.5 * a0s * p * (1.0 - q) + 0.5 * a1s * (1.0 - p) * (1.0 - q),
        a0s * q * (1.0 - p) + 0.5 * a1s * p * (1.0 - q) - s,
        0.5 * a0s * (1.0 - p) * (1.0 - q) + a1s * p * q + s,
        0.5 * a0s * (1.0 - p) * (1.0 - q) + 0.5 * a1s * p * (1.0 - q),
    ]
}

/// 2x3 payoff for a general two-term state.
pub fn two_by_three_payoff(a0: f64, a1: f64, p: f64, q: f64) -> f64 {
    let (a0s, a1s) = (a0 * a0, a1 * a1);
    (6.5 * a0s + a1s) * p * q
        + 5.0 * SQRT_2 * theta3(q).sin() * a0 * a1 * (p * q * (1.0 - p) * (1.0 - q)).sqrt()
        - 2.5 * a0s * p
        + (3.0 * a1s - 5.0 * a0s) * q
        + 3.0 * a0s
}

/// 2x3 payoff with the product state |11>.
pub fn two_by_three_product(p: f64, q: f64) -> f64 {
    6.5 * p * q - 2.5 * p - 5.0 * q + 3.0
}

/// 3x3 payoff with the product state |11>.
pub fn three_by_three_product(p: f64, q: f64) -> f64 {
    2.25 * p * q - 0.75 * p - 1.25 * q + 1.75
}

/// 3x3 payoff for the uniform entangled state, as printed.
pub fn three_by_three_uniform(p: f64, q: f64) -> f64 {
    let (t1, t2) = (theta3(p), theta3(q));
    0.5 * p * q - 4.0 / 3.0 * p - 4.0 / 3.0 * q
        + 2.5
        + 16.0 / 3.0 * t1.cos() * t2.cos() * (p * q * (1.0 - p) * (1.0 - q)).sqrt()
        - 5.0 / 3.0 * (1.0 - p) * t2.cos() * (q * (1.0 - q)).sqrt()
        - 2.0 * (1.0 - q) * t1.cos() * (p * (1.0 - p)).sqrt()
}

/// General three-term 3x3 payoff, as printed.
pub fn three_by_three_general(a0: f64, a1: f64, a2: f64, p: f64, q: f64) -> f64 {
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

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
