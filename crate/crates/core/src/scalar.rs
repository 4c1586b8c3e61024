//! Scalar abstractions behind the generic core.

use num_traits::{Float, FloatConst, Num, NumAssign, Signed, Zero};

/// Real floating-point scalar underlying complex amplitudes.
///
/// Implemented for `f32` and `f64`; everything in [`crate::hilbert`],
/// [`crate::spin`] and [`crate::statistics`] is generic over it.
pub trait Scalar:
    Float
    + FloatConst
    + NumAssign
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Default absolute tolerance for amplitude comparisons.
    fn default_tol() -> Self;
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-5
    }
}

/// Ordered-field scalar for the assignment-mass feasibility solver.
///
/// `BigRational` pivots exactly (`pivot_tol` is zero); `f64` treats
/// magnitudes at or below `pivot_tol` as zero.
pub trait LpScalar:
    Clone + Num + Signed + PartialOrd + std::fmt::Debug + std::fmt::Display
{
    /// Magnitudes at or below this threshold count as zero during pivoting.
    fn pivot_tol() -> Self;

    /// The rational value `num / den`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::pivot_tol()
    }
}

impl LpScalar for f64 {
    fn pivot_tol() -> Self {
        1e-9
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl LpScalar for num_rational::BigRational {
    fn pivot_tol() -> Self {
        Self::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(num.into(), den.into())
    }
}
