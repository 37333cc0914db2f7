//! Two-player zero-sum quantum games with restricted one-parameter strategies.
//!
//! Each player moves with a single-parameter unitary `U(p)` acting on their
//! half of a Schmidt-diagonal initial state. The joint measurement
//! distribution is scored against player A's payoff matrix, and the
//! resulting payoff surface `P_A(p, q)` is searched for saddle points.
//! A classical mixed-strategy minimax solver provides the baseline.
//!
//! All numerical types are generic over the scalar; the aliases below fix
//! them to `f64`.

pub mod classical;
pub mod engine;
pub mod equilibrium;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod strategy;

pub use classical::{dual_value, fictitious_play, solve_zero_sum, ClassicalSolution, MixedStrategy};
pub use engine::{evolve, payoff, payoff_at, probability_matrix, QuantumGame};
pub use equilibrium::{
    classify, find_critical_points, find_equilibrium, sample_surface, CandidateReport,
    EquilibriumFinder, EquilibriumStatus, SearchSettings,
};
pub use error::{Error, Result};
pub use scalar::{Real, Scalar};
pub use strategy::{build_mixing_matrix, build_unitary, feasible_domain, theta, PhaseConvention};

pub type PayoffMatrix = engine::PayoffMatrix<f64>;
pub type SchmidtState = engine::SchmidtState<f64>;
pub type AmplitudeMatrix = engine::AmplitudeMatrix<f64>;
pub type ProbabilityMatrix = engine::ProbabilityMatrix<f64>;
pub type Game = engine::QuantumGame<f64>;
pub type MixingMatrix = strategy::MixingMatrix<f64>;
pub type RestrictedUnitary = strategy::RestrictedUnitary<f64>;
pub type FeasibleDomain = strategy::FeasibleDomain<f64>;
pub type PayoffSurface = equilibrium::PayoffSurface<f64>;
pub type EquilibriumReport = equilibrium::EquilibriumReport<f64>;
pub type Solution = classical::ClassicalSolution<f64>;
pub type ExactSolution = classical::ClassicalSolution<num_rational::BigRational>;
