//! Scalar abstractions.
//!
//! [`Scalar`] is the minimal field-like surface the linear-programming code
//! needs, so the simplex tableau runs unchanged over `f32`, `f64` and exact
//! rationals. [`Real`] adds the transcendental functions required by the
//! quantum engine and the equilibrium search.

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Float, FloatConst, FromPrimitive, Num, Zero};

pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialOrd + Debug + Display {
    /// Pivot and comparison tolerance. Zero for exact types.
    fn tolerance() -> Self;

    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
}

impl Scalar for Rational64 {
    fn tolerance() -> Self {
        Rational64::zero()
    }
}

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Scalar + Float + FloatConst + FromPrimitive + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal; every literal used in this crate is
    /// representable (possibly rounded) in both `f32` and `f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to Real")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact rational from an `f64` (every finite `f64` is a dyadic rational).
pub fn exact_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Exact rational from an integer numerator and denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
