//! Spin-state laboratory for two-level multi-particle systems.
//!
//! The crate provides dense state vectors over tensor products of small
//! factors ([`hilbert`]), rotational-invariance and isotropic
//! spin-correlation checks together with Born-rule measurement
//! distributions ([`spin`]), Bell-inequality evaluation backed by an exact
//! local-hidden-variable feasibility solver with re-checkable certificates
//! ([`coupling`]), permutation statistics — wedge and symmetric products,
//! Fock spin states, composite statistics groups ([`statistics`]) — and
//! reproducible sampling experiments ([`experiments`]).
//!
//! Core math is generic over the real scalar (`f32`/`f64`) through
//! [`Scalar`]; the feasibility solver is additionally generic over an
//! ordered field through [`LpScalar`], so the same pivoting code runs in
//! exact rational and floating-point mode. Concrete `f64` aliases live at
//! the crate root.

pub mod coupling;
mod error;
pub mod experiments;
pub mod hilbert;
pub mod rng;
pub mod scalar;
pub mod spin;
pub mod statistics;

pub use error::Error;
pub use scalar::{LpScalar, Scalar};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex amplitude over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// State vector over `f64`.
pub type Ket64 = hilbert::Ket<f64>;
/// Dense operator over `f64`.
pub type Operator64 = hilbert::Operator<f64>;
/// Measurement-outcome distribution over `f64`.
pub type JointDistribution64 = spin::JointDistribution<f64>;
/// Bell-inequality report over `f64`.
pub type BellReport64 = coupling::BellReport<f64>;
/// Arbitrary-precision rational used by the exact feasibility mode.
pub type Rational = num_rational::BigRational;

/// Default absolute tolerance for `f64` amplitude comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;
