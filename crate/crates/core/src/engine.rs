//! Game machine: evolves `sum_k a_k |kk>` under `U_A ⊗ U_B` and scores the
//! measured outcome distribution against player A's payoff matrix.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::strategy::{feasible_domain, FeasibleDomain, PhaseConvention, RestrictedUnitary};

/// Player A's payoffs `alpha_ij`, rows indexed by A's pure strategies and
/// columns by B's. B receives the negation.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> PayoffMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || m == 0 {
            return Err(Error::InvalidPayoff("matrix is empty".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != m) {
            return Err(Error::InvalidPayoff(format!(
                "row {} has {} entries, expected {m}",
                i + 1,
                rows[i].len()
            )));
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        if entries.iter().any(|x| !x.is_finite_value()) {
            return Err(Error::InvalidPayoff("entries must be finite".into()));
        }
        Ok(Self { rows: n, cols: m, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        Self::new((0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self { rows: self.cols, cols: self.rows, entries }
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> PayoffMatrix<U> {
        PayoffMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn min_entry(&self) -> T {
        self.entries
            .iter()
            .skip(1)
            .fold(self.entries[0].clone(), |acc, x| if *x < acc { x.clone() } else { acc })
    }

    pub fn max_entry(&self) -> T {
        self.entries
            .iter()
            .skip(1)
            .fold(self.entries[0].clone(), |acc, x| if *x > acc { x.clone() } else { acc })
    }
}

/// Nonnegative amplitudes of the Schmidt-diagonal initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtState<T> {
    coeffs: Vec<T>,
}

impl<T: Real> SchmidtState<T> {
    pub const DEFAULT_NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        Self::with_tolerance(coeffs, T::lit(Self::DEFAULT_NORM_TOLERANCE))
    }

    /// Validates without renormalizing: `|sum a_k^2 - 1| <= tol`.
    pub fn with_tolerance(coeffs: Vec<T>, tol: T) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidState("no coefficients".into()));
        }
        if let Some(k) = coeffs.iter().position(|a| !a.is_finite() || *a < T::zero()) {
            return Err(Error::InvalidState(format!(
                "coefficient a_{k} = {} must be a finite nonnegative real",
                coeffs[k]
            )));
        }
        let norm: T = coeffs.iter().fold(T::zero(), |acc, &a| acc + a * a);
        if (norm - T::one()).abs() > tol {
            return Err(Error::InvalidState(format!(
                "squared norm is {norm}, expected 1 (tolerance {tol:e})"
            )));
        }
        Ok(Self { coeffs })
    }

    /// The product state `|kk>` in a list of `len` coefficients.
    pub fn basis(k: usize, len: usize) -> Result<Self> {
        if k >= len {
            return Err(Error::InvalidState(format!("basis index {k} out of range {len}")));
        }
        let mut coeffs = vec![T::zero(); len];
        coeffs[k] = T::one();
        Ok(Self { coeffs })
    }

    /// Equal weight on the first `support` of `len` diagonal terms.
    pub fn uniform(support: usize, len: usize) -> Result<Self> {
        if support == 0 || support > len {
            return Err(Error::InvalidState(format!("support {support} invalid for length {len}")));
        }
        let a = T::one() / T::lit(support as f64).sqrt();
        let coeffs = (0..len).map(|k| if k < support { a } else { T::zero() }).collect();
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// More than one nonzero Schmidt coefficient.
    pub fn is_entangled(&self) -> bool {
        self.coeffs.iter().filter(|a| **a > T::zero()).count() > 1
    }
}

/// Output amplitudes `C_ij` of `|ij>`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> AmplitudeMatrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn total_probability(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }
}

/// Joint outcome distribution `x_ij = |C_ij|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> ProbabilityMatrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn total(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &x| acc + x)
    }

    /// Marginal distribution over A's pure strategies.
    pub fn row_marginal(&self) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().fold(T::zero(), |a, &x| a + x))
            .collect()
    }
}

/// `C_ij = sum_k a_k (U_A)_ik (U_B)_jk`.
pub fn evolve<T: Real>(
    state: &SchmidtState<T>,
    ua: &RestrictedUnitary<T>,
    ub: &RestrictedUnitary<T>,
) -> Result<AmplitudeMatrix<T>> {
    let (n, m) = (ua.dim(), ub.dim());
    let k = n.min(m);
    if state.len() != k {
        return Err(Error::Shape(format!(
            "a {n}x{m} game needs {k} Schmidt coefficients, got {}",
            state.len()
        )));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut data = vec![zero; n * m];
    for (s, &a) in state.coeffs().iter().enumerate() {
        if a == T::zero() {
            continue;
        }
        for i in 0..n {
            let left = ua.get(i, s) * a;
            for j in 0..m {
                data[i * m + j] = data[i * m + j] + left * ub.get(j, s);
            }
        }
    }
    Ok(AmplitudeMatrix { rows: n, cols: m, data })
}

pub fn probability_matrix<T: Real>(amps: &AmplitudeMatrix<T>) -> ProbabilityMatrix<T> {
    ProbabilityMatrix {
        rows: amps.rows,
        cols: amps.cols,
        data: amps.data.iter().map(|c| c.norm_sqr()).collect(),
    }
}

/// `Tr(X A^T) = sum_ij x_ij alpha_ij`.
pub fn payoff<T: Real>(x: &ProbabilityMatrix<T>, game: &PayoffMatrix<T>) -> Result<T> {
    if (x.rows, x.cols) != game.shape() {
        return Err(Error::Shape(format!(
            "probability matrix is {}x{}, payoff matrix is {}x{}",
            x.rows,
            x.cols,
            game.rows(),
            game.cols()
        )));
    }
    Ok(x.data
        .iter()
        .zip(&game.entries)
        .fold(T::zero(), |acc, (&p, &a)| acc + p * a))
}

/// Player A's payoff when A plays `U(p)` and B plays `U(q)`.
pub fn payoff_at<T: Real>(game: &PayoffMatrix<T>, state: &SchmidtState<T>, p: T, q: T) -> Result<T> {
    QuantumGame::new(game.clone(), state.clone())?.payoff_at(p, q)
}

/// A payoff matrix paired with an initial state.
#[derive(Debug, Clone)]
pub struct QuantumGame<T> {
    payoff: PayoffMatrix<T>,
    state: SchmidtState<T>,
    convention: PhaseConvention,
    domain_a: FeasibleDomain<T>,
    domain_b: FeasibleDomain<T>,
}

impl<T: Real> QuantumGame<T> {
    pub fn new(payoff: PayoffMatrix<T>, state: SchmidtState<T>) -> Result<Self> {
        Self::with_convention(payoff, state, PhaseConvention::Paper)
    }

    pub fn with_convention(
        payoff: PayoffMatrix<T>,
        state: SchmidtState<T>,
        convention: PhaseConvention,
    ) -> Result<Self> {
        let (n, m) = payoff.shape();
        let domain_a = feasible_domain(n)?;
        let domain_b = feasible_domain(m)?;
        if state.len() != n.min(m) {
            return Err(Error::Shape(format!(
                "a {n}x{m} game needs {} Schmidt coefficients, got {}",
                n.min(m),
                state.len()
            )));
        }
        Ok(Self { payoff, state, convention, domain_a, domain_b })
    }

    pub fn payoff_matrix(&self) -> &PayoffMatrix<T> {
        &self.payoff
    }

    pub fn state(&self) -> &SchmidtState<T> {
        &self.state
    }

    pub fn convention(&self) -> PhaseConvention {
        self.convention
    }

    pub fn domain_a(&self) -> &FeasibleDomain<T> {
        &self.domain_a
    }

    pub fn domain_b(&self) -> &FeasibleDomain<T> {
        &self.domain_b
    }

    pub fn contains(&self, p: T, q: T) -> bool {
        self.domain_a.contains(p) && self.domain_b.contains(q)
    }

    pub fn unitary_a(&self, p: T) -> Result<RestrictedUnitary<T>> {
        RestrictedUnitary::with_convention(p, self.payoff.rows(), self.convention)
    }

    pub fn unitary_b(&self, q: T) -> Result<RestrictedUnitary<T>> {
        RestrictedUnitary::with_convention(q, self.payoff.cols(), self.convention)
    }

    pub fn probabilities(&self, p: T, q: T) -> Result<ProbabilityMatrix<T>> {
        let amps = evolve(&self.state, &self.unitary_a(p)?, &self.unitary_b(q)?)?;
        Ok(probability_matrix(&amps))
    }

    pub fn payoff_at(&self, p: T, q: T) -> Result<T> {
        payoff(&self.probabilities(p, q)?, &self.payoff)
    }

    /// Zero-sum counterpart: player B's payoff.
    pub fn payoff_b_at(&self, p: T, q: T) -> Result<T> {
        self.payoff_at(p, q).map(|v| -v)
    }

    /// Payoff from prebuilt unitaries, for grid sweeps that reuse them.
    pub fn payoff_with(&self, ua: &RestrictedUnitary<T>, ub: &RestrictedUnitary<T>) -> Result<T> {
        payoff(&probability_matrix(&evolve(&self.state, ua, ub)?), &self.payoff)
    }
}
