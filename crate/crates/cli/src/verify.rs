//! Self-check of the engine's structural invariants.

use qgame::linalg::CMatrix;
use qgame::strategy::{feasible_domain, theta};
use qgame::{MixingMatrix, RestrictedUnitary};
use qgame::{PhaseConvention, SchmidtState};
use rand::Rng;

use crate::error::Result;
use crate::reproduce::Outcome;

pub const UNITARY_SAMPLES: usize = 1000;
pub const UNITARY_TOL: f64 = 1e-12;
const SEED: u64 = 0xc0ffee;

pub fn run_verify(convention: PhaseConvention) -> Result<Vec<Outcome>> {
    let mut rng: rand_chacha::ChaCha8Rng = rand::SeedableRng::seed_from_u64(SEED);
    Ok(vec![
        unitarity(&mut rng, convention)?,
        mixing_identity()?,
        normalization(&mut rng, convention)?,
        identity_limit(convention)?,
        feasibility_bound()?,
    ])
}

fn unitarity(rng: &mut impl Rng, convention: PhaseConvention) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for _ in 0..UNITARY_SAMPLES {
        let dim = rng.gen_range(2..=6);
        let dom = feasible_domain::<f64>(dim)?;
        let p = rng.gen_range(dom.p_min..=dom.p_max);
        worst = worst.max(RestrictedUnitary::with_convention(p, dim, convention)?.unitarity_defect());
    }
    Ok(Outcome::new(
        "engine",
        "unitarity",
        worst < UNITARY_TOL,
        format!("max |U^H U - I| = {worst:.3e} over {UNITARY_SAMPLES} random (dim, p), tol {UNITARY_TOL:e}"),
    ))
}

fn mixing_identity() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let m = MixingMatrix::new(n)?;
        let mc = m.to_complex();
        let lhs = &mc * &mc;
        let c = m.square_coefficient();
        for i in 0..n {
            for j in 0..n {
                let d = lhs[(i, j)] - mc[(i, j)] * c;
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d.re - delta).hypot(d.im));
            }
        }
    }
    Ok(Outcome::new(
        "engine",
        "mixing",
        worst < UNITARY_TOL,
        format!("max |M^2 - I - cM| = {worst:.3e} for N = 2..8"),
    ))
}

fn normalization(rng: &mut impl Rng, convention: PhaseConvention) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (n, m) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let k = n.min(m);
        let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1.0)).collect();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        let state = SchmidtState::new(raw.iter().map(|x| x / norm).collect())?;
        let payoff = qgame::PayoffMatrix::from_fn(n, m, |_, _| rng.gen_range(-5.0..5.0))?;
        let game = qgame::Game::with_convention(payoff, state, convention)?;
        let (da, db) = (*game.domain_a(), *game.domain_b());
        let p = rng.gen_range(da.p_min..=da.p_max);
        let q = rng.gen_range(db.p_min..=db.p_max);
        worst = worst.max((game.probabilities(p, q)?.total() - 1.0).abs());
    }
    Ok(Outcome::new(
        "engine",
        "normalization",
        worst < UNITARY_TOL,
        format!("max |sum x_ij - 1| = {worst:.3e} over 200 random games"),
    ))
}

fn identity_limit(convention: PhaseConvention) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 2..=8 {
        let u = RestrictedUnitary::with_convention(1.0, n, convention)?;
        worst = worst.max(u.matrix().max_abs_diff(&CMatrix::identity(n)));
    }
    Ok(Outcome::new("engine", "identity", worst < UNITARY_TOL, format!("max |U(1) - I| = {worst:.3e} for N = 2..8")))
}

fn feasibility_bound() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 3..=6 {
        let p_min = feasible_domain::<f64>(n)?.p_min;
        worst = worst.max(theta(p_min, n)?.abs());
    }
    Ok(Outcome::new(
        "engine",
        "feasibility",
        worst < UNITARY_TOL,
        format!("max |theta(p_min)| = {worst:.3e} for N = 3..6"),
    ))
}
