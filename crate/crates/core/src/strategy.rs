//! One-parameter restricted unitary strategies.
//!
//! A player with `N` pure strategies moves with
//!
//! ```text
//! U(p) = sqrt(p) I - sqrt(1 - p) e^{i theta(p)} M_N,   N >= 3
//! U(p) = sqrt(p) I + i sqrt(1 - p) sigma_x,            N == 2
//! ```
//!
//! where `M_N` has zero diagonal and every off-diagonal entry equal to
//! `1/sqrt(N-1)`. Since `M_N^2 = I + (N-2)/sqrt(N-1) M_N`, `U(p)` is unitary
//! exactly when `cos theta = (N-2)/2 * sqrt((1-p) / ((N-1) p))`, which has a
//! real solution only for `p >= ((N-2)/N)^2`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// Symmetric zero-diagonal matrix mapping each basis strategy to the equal
/// superposition of all the others.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix<T> {
    dim: usize,
    off_diagonal: T,
}

impl<T: Real> MixingMatrix<T> {
    pub fn new(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let off_diagonal = T::one() / T::lit((dim - 1) as f64).sqrt();
        Ok(Self { dim, off_diagonal })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn off_diagonal(&self) -> T {
        self.off_diagonal
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        assert!(i < self.dim && j < self.dim);
        if i == j {
            T::zero()
        } else {
            self.off_diagonal
        }
    }

    /// `M |k>` as a real vector.
    pub fn apply_basis(&self, k: usize) -> Vec<T> {
        (0..self.dim).map(|j| self.get(j, k)).collect()
    }

    /// Coefficient `c` in `M^2 = I + c M`.
    pub fn square_coefficient(&self) -> T {
        let n = T::lit(self.dim as f64);
        (n - T::lit(2.0)) / (n - T::one()).sqrt()
    }

    pub fn to_complex(&self) -> CMatrix<T> {
        CMatrix::from_fn(self.dim, self.dim, |i, j| Complex::new(self.get(i, j), T::zero()))
    }
}

pub fn build_mixing_matrix<T: Real>(dim: usize) -> Result<MixingMatrix<T>> {
    MixingMatrix::new(dim)
}

/// Interval `[p_min, 1]` on which the restricted operator is unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleDomain<T> {
    pub dim: usize,
    pub p_min: T,
    pub p_max: T,
}

impl<T: Real> FeasibleDomain<T> {
    pub fn contains(&self, p: T) -> bool {
        p >= self.p_min && p <= self.p_max
    }

    pub fn width(&self) -> T {
        self.p_max - self.p_min
    }

    /// `n` evenly spaced points covering both endpoints exactly.
    pub fn linspace(&self, n: usize) -> Vec<T> {
        assert!(n >= 2, "a grid needs at least its two endpoints");
        let last = T::lit((n - 1) as f64);
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.p_max
                } else {
                    self.p_min + self.width() * T::lit(i as f64) / last
                }
            })
            .collect()
    }

    pub fn on_boundary(&self, p: T, eps: T) -> bool {
        (p - self.p_min).abs() <= eps || (self.p_max - p).abs() <= eps
    }
}

pub fn feasible_domain<T: Real>(dim: usize) -> Result<FeasibleDomain<T>> {
    check_dim(dim)?;
    let n = T::lit(dim as f64);
    let r = (n - T::lit(2.0)) / n;
    Ok(FeasibleDomain {
        dim,
        p_min: r * r,
        p_max: T::one(),
    })
}

/// Raw argument of the arccos defining the phase, without any clamping.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn theta_argument<T: Real>(p: T, dim: usize) -> Result<T> {
    check_dim(dim)?;
    if dim == 2 {
        return Ok(T::zero());
    }
    if !(p > T::zero()) || p > T::one() {
        return Err(infeasible(p, dim));
    }
    let n = T::lit(dim as f64);
    let half_gap = (n - T::lit(2.0)) / T::lit(2.0);
    Ok(half_gap * ((T::one() - p) / ((n - T::one()) * p)).sqrt())
}

/// Phase angle `theta(p)` for a player with `dim` pure strategies.
pub fn theta<T: Real>(p: T, dim: usize) -> Result<T> {
    let domain = feasible_domain::<T>(dim)?;
    if !domain.contains(p) {
        return Err(infeasible(p, dim));
    }
    let arg = theta_argument(p, dim)?;
    // At p_min the argument is 1 up to rounding.
    Ok(arg.min(T::one()).acos())
}

/// Sign convention for the two-strategy operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseConvention {
    /// `sqrt(p) I + i sqrt(1-p) sigma_x` at dimension 2; general form above.
    #[default]
    Paper,
    /// The general `- sqrt(1-p) e^{i theta} M` form at every dimension, which
    /// at dimension 2 gives `sqrt(p) I - i sqrt(1-p) sigma_x`.
    Uniform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedUnitary<T> {
    dim: usize,
    p: T,
    theta: T,
    matrix: CMatrix<T>,
}

impl<T: Real> RestrictedUnitary<T> {
    pub fn new(p: T, dim: usize) -> Result<Self> {
        Self::with_convention(p, dim, PhaseConvention::Paper)
    }

    pub fn with_convention(p: T, dim: usize, convention: PhaseConvention) -> Result<Self> {
        let theta = theta(p, dim)?;
        let mixing = MixingMatrix::<T>::new(dim)?;
        let diag = Complex::new(p.sqrt(), T::zero());
        let rest = (T::one() - p).sqrt();
        let off = match (dim, convention) {
            (2, PhaseConvention::Paper) => Complex::new(T::zero(), rest),
            _ => -Complex::from_polar(rest, theta),
        } * mixing.off_diagonal();
        let matrix = CMatrix::from_fn(dim, dim, |i, j| if i == j { diag } else { off });
        Ok(Self { dim, p, theta, matrix })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.matrix[(i, j)]
    }

    /// `max |(U†U - I)_ij|`.
    pub fn unitarity_defect(&self) -> T {
        self.matrix.unitarity_defect()
    }
}

pub fn build_unitary<T: Real>(p: T, dim: usize) -> Result<RestrictedUnitary<T>> {
    RestrictedUnitary::new(p, dim)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::InvalidDimension { dim })
    } else {
        Ok(())
    }
}

fn infeasible<T: Real>(p: T, dim: usize) -> Error {
    let n = dim as f64;
    let r = (n - 2.0) / n;
    Error::InfeasibleParameter {
        p: p.to_f64_lossy(),
        dim,
        p_min: r * r,
    }
}
