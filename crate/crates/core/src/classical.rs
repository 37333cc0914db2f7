//! Classical mixed-strategy solution of the zero-sum matrix game.
//!
//! The payoff matrix is shifted so every entry is at least 1, which makes
//! the game value positive and leaves the optimal strategies unchanged. The
//! column player's problem
//!
//! ```text
//! maximize sum_j y_j   subject to   A' y <= 1,  y >= 0
//! ```
//!
//! then has the origin as a feasible basis, so a single-phase dense tableau
//! simplex with Bland's rule solves it. The optimal objective is `1 / v'`
//! and the row player's strategy is read off the slack reduced costs.

use crate::engine::PayoffMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy<T> {
    weights: Vec<T>,
}

impl<T: Scalar> MixedStrategy<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        let tol = T::tolerance();
        if weights.is_empty() {
            return Err(Error::InvalidArgument("empty mixed strategy".into()));
        }
        if weights.iter().any(|w| *w < T::zero()) {
            return Err(Error::InvalidArgument("mixed strategy weights must be nonnegative".into()));
        }
        let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
        let dev = total - T::one();
        if dev > tol || dev < -tol {
            return Err(Error::InvalidArgument("mixed strategy weights must sum to 1".into()));
        }
        Ok(Self { weights })
    }

    pub fn pure(k: usize, len: usize) -> Self {
        let weights = (0..len).map(|i| if i == k { T::one() } else { T::zero() }).collect();
        Self { weights }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSolution<T> {
    pub row_strategy: MixedStrategy<T>,
    pub col_strategy: MixedStrategy<T>,
    /// Game value for the row player (A).
    pub value: T,
    /// Certified bracket on the value; collapses to `(value, value)` for
    /// exact LP solutions.
    pub value_bounds: (T, T),
}

impl<T: Scalar> ClassicalSolution<T> {
    /// `min_j (x^T A)_j`: what the row strategy guarantees.
    pub fn row_guarantee(&self, a: &PayoffMatrix<T>) -> T {
        let x = self.row_strategy.weights();
        (0..a.cols())
            .map(|j| (0..a.rows()).fold(T::zero(), |acc, i| acc + x[i].clone() * a.get(i, j).clone()))
            .reduce(|m, v| if v < m { v } else { m })
            .expect("nonempty matrix")
    }

    /// `max_i (A y)_i`: the most the column strategy concedes.
    pub fn col_cap(&self, a: &PayoffMatrix<T>) -> T {
        let y = self.col_strategy.weights();
        (0..a.rows())
            .map(|i| (0..a.cols()).fold(T::zero(), |acc, j| acc + a.get(i, j).clone() * y[j].clone()))
            .reduce(|m, v| if v > m { v } else { m })
            .expect("nonempty matrix")
    }

    pub fn satisfies_minimax(&self, a: &PayoffMatrix<T>, tol: T) -> bool {
        self.row_guarantee(a) >= self.value.clone() - tol.clone()
            && self.col_cap(a) <= self.value.clone() + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Shift entries to be at least 1 before solving. Without it the LP is
    /// only valid for matrices with a positive value.
    pub shift_to_positive: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { shift_to_positive: true }
    }
}

pub fn solve_zero_sum<T: Scalar>(a: &PayoffMatrix<T>) -> Result<ClassicalSolution<T>> {
    solve_zero_sum_with(a, SolverOptions::default())
}

// Negated comparisons below also reject NaN.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn solve_zero_sum_with<T: Scalar>(a: &PayoffMatrix<T>, opts: SolverOptions) -> Result<ClassicalSolution<T>> {
    let shift = if opts.shift_to_positive {
        T::one() - a.min_entry()
    } else {
        T::zero()
    };
    let shifted = a.map(|x| x.clone() + shift.clone());
    let lp = column_player_lp(&shifted)?;
    if !(lp.objective > T::zero()) {
        return Err(Error::InvalidArgument("game value of the LP matrix is not positive".into()));
    }
    let v = T::one() / lp.objective;
    let scale = |w: Vec<T>| w.into_iter().map(|x| x * v.clone()).collect::<Vec<_>>();
    let value = v.clone() - shift;
    Ok(ClassicalSolution {
        row_strategy: MixedStrategy::new(scale(lp.duals))?,
        col_strategy: MixedStrategy::new(scale(lp.primal))?,
        value: value.clone(),
        value_bounds: (value.clone(), value),
    })
}

/// The value computed from the row player's side, by solving the game
/// `-A^T` in which B maximizes.
pub fn dual_value<T: Scalar>(a: &PayoffMatrix<T>) -> Result<T> {
    Ok(-solve_zero_sum(&a.transpose().negated())?.value)
}

struct LpSolution<T> {
    primal: Vec<T>,
    duals: Vec<T>,
    objective: T,
}

/// `max 1^T y  s.t.  A y <= 1, y >= 0` by tableau simplex with Bland's rule.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn column_player_lp<T: Scalar>(a: &PayoffMatrix<T>) -> Result<LpSolution<T>> {
    let (n, m) = a.shape();
    let width = m + n + 1;
    let rhs = m + n;
    let tol = T::tolerance();

    let mut tab: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = vec![T::zero(); width];
            for (j, x) in a.row(i).iter().enumerate() {
                row[j] = x.clone();
            }
            row[m + i] = T::one();
            row[rhs] = T::one();
            row
        })
        .collect();
    let mut obj = vec![T::zero(); width];
    for c in obj.iter_mut().take(m) {
        *c = -T::one();
    }
    let mut basis: Vec<usize> = (m..m + n).collect();

    // Bland's rule terminates; the bound only guards against tolerance
    // pathologies.
    let max_pivots = 50 * (n + m + 1) * (n + m + 1);
    for _ in 0..max_pivots {
        let Some(enter) = (0..m + n).find(|&c| obj[c] < -tol.clone()) else {
            let mut primal = vec![T::zero(); m];
            for (r, &b) in basis.iter().enumerate() {
                if b < m {
                    primal[b] = clamp_nonneg(tab[r][rhs].clone());
                }
            }
            let duals = (0..n).map(|i| clamp_nonneg(obj[m + i].clone())).collect();
            return Ok(LpSolution { primal, duals, objective: obj[rhs].clone() });
        };

        let mut leave: Option<(usize, T)> = None;
        for r in 0..n {
            if !(tab[r][enter] > tol) {
                continue;
            }
            let ratio = tab[r][rhs].clone() / tab[r][enter].clone();
            leave = match leave {
                None => Some((r, ratio)),
                Some((best, best_ratio)) => {
                    let diff = ratio.clone() - best_ratio.clone();
                    let tie = !(diff > tol) && !(diff < -tol.clone());
                    if diff < -tol.clone() || (tie && basis[r] < basis[best]) {
                        Some((r, ratio))
                    } else {
                        Some((best, best_ratio))
                    }
                }
            };
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Unbounded);
        };

        let piv = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r == pr {
                continue;
            }
            eliminate(row, &pivot_row, enter);
        }
        eliminate(&mut obj, &pivot_row, enter);
        basis[pr] = enter;
    }
    Err(Error::InvalidArgument("simplex pivot limit exceeded".into()))
}

fn eliminate<T: Scalar>(row: &mut [T], pivot_row: &[T], col: usize) {
    let f = row[col].clone();
    if f == T::zero() {
        return;
    }
    for (x, p) in row.iter_mut().zip(pivot_row) {
        *x = x.clone() - f.clone() * p.clone();
    }
}

fn clamp_nonneg<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        x
    }
}

/// Simultaneous fictitious play. Each round both players best-respond to
/// the opponent's empirical mixture; ties go to the lowest index.
///
/// The returned bounds are `min_j (x̄^T A)_j` and `max_i (A ȳ)_i`, which
/// always bracket the game value; `value` is their midpoint.
pub fn fictitious_play<T: Real>(a: &PayoffMatrix<T>, iterations: usize) -> Result<ClassicalSolution<T>> {
    if iterations == 0 {
        return Err(Error::InvalidArgument("fictitious play needs at least one iteration".into()));
    }
    let (n, m) = a.shape();
    // row_payoff[i] = sum over B's history of A[i][j]; col_payoff[j] likewise.
    let mut row_payoff = vec![T::zero(); n];
    let mut col_payoff = vec![T::zero(); m];
    let mut row_counts = vec![0usize; n];
    let mut col_counts = vec![0usize; m];
    for _ in 0..iterations {
        let i = argbest(&row_payoff, |x, y| x > y);
        let j = argbest(&col_payoff, |x, y| x < y);
        row_counts[i] += 1;
        col_counts[j] += 1;
        for (k, r) in row_payoff.iter_mut().enumerate() {
            *r = *r + *a.get(k, j);
        }
        for (k, c) in col_payoff.iter_mut().enumerate() {
            *c = *c + *a.get(i, k);
        }
    }
    let t = T::lit(iterations as f64);
    let lower = col_payoff.iter().copied().fold(T::infinity(), T::min) / t;
    let upper = row_payoff.iter().copied().fold(T::neg_infinity(), T::max) / t;
    let freq = |counts: &[usize]| counts.iter().map(|&c| T::lit(c as f64) / t).collect::<Vec<_>>();
    Ok(ClassicalSolution {
        row_strategy: MixedStrategy::new(freq(&row_counts))?,
        col_strategy: MixedStrategy::new(freq(&col_counts))?,
        value: (lower + upper) / T::lit(2.0),
        value_bounds: (lower, upper),
    })
}

fn argbest<T: Real>(xs: &[T], better: impl Fn(T, T) -> bool) -> usize {
    let mut best = 0;
    for (k, &x) in xs.iter().enumerate().skip(1) {
        if better(x, xs[best]) {
            best = k;
        }
    }
    best
}
