//! Rotational invariance, isotropic spin correlation, and the Born-rule
//! measurement distributions of two-level multi-particle states.
//!
//! A measurement direction `theta` uses the basis
//! `{spinor(theta, c), orthogonal_spinor(spinor(theta, c))}` for outcomes
//! `+1` and `-1`. Probabilities follow `cos²(c·theta)` / `sin²(c·theta)`
//! with the spin constant `c`: `c = 1/2` gives the half-angle formulas of
//! spin-1/2 particles, `c = 1` the full-angle formulas of photons.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::NumCast;

use crate::hilbert::{kron, orthogonal_spinor, spinor, tensor, Ket, Operator};
use crate::rng::{stream_rng, unit_f64};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Seed of the pseudo-random tail of [`default_invariance_grid`].
pub const GRID_SEED: u64 = 42;

/// Measurement outcome of a single two-level particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One rotation: angle `theta` (canonicalized to `[0, 2π)`) and spin
/// constant `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSpec<T: Scalar> {
    pub theta: T,
    pub c: T,
}

impl<T: Scalar> RotationSpec<T> {
    pub fn new(theta: T, c: T) -> Self {
        let tau = T::PI() + T::PI();
        let mut t = theta % tau;
        if t < T::zero() {
            t += tau;
        }
        Self { theta: t, c }
    }
}

/// The 2×2 rotation `[[cos(cθ), sin(cθ)], [-sin(cθ), cos(cθ)]]`.
pub fn rotation<T: Scalar>(spec: &RotationSpec<T>) -> Operator<T> {
    let a = spec.c * spec.theta;
    Operator::from_reals(2, &[a.cos(), a.sin(), -a.sin(), a.cos()]).unwrap()
}

/// The singlet `(|+-> - |-+>) / √2`.
pub fn make_singlet<T: Scalar>() -> Ket<T> {
    let h = T::one() / T::from(2.0).unwrap().sqrt();
    Ket::from_reals(vec![2, 2], &[T::zero(), h, -h, T::zero()]).unwrap()
}

/// The parallel-correlated state `(|++> + |-->) / √2`.
pub fn make_parallel_isc<T: Scalar>() -> Ket<T> {
    let h = T::one() / T::from(2.0).unwrap().sqrt();
    Ket::from_reals(vec![2, 2], &[h, T::zero(), T::zero(), h]).unwrap()
}

/// The rotationally invariant but not isotropically correlated state
/// `(|++> + |--> + |+-> - |-+>) / 2`.
pub fn make_state2<T: Scalar>() -> Ket<T> {
    let h = T::from(0.5).unwrap();
    Ket::from_reals(vec![2, 2], &[h, h, -h, h]).unwrap()
}

fn require_two_level<T: Scalar>(k: &Ket<T>) -> Result<()> {
    if k.dims().iter().any(|&d| d != 2) {
        return Err(Error::InvalidInput(
            "state must be built from two-level factors".into(),
        ));
    }
    Ok(())
}

/// Residual `‖(R(θ) ⊗ … ⊗ R(θ)) k − k‖` of the invariance condition at one
/// grid point.
pub fn invariance_residual<T: Scalar>(k: &Ket<T>, c: T, theta: T) -> Result<T> {
    require_two_level(k)?;
    let r = rotation(&RotationSpec::new(theta, c));
    let u = r.kron_power(k.factors())?;
    Ok(u.apply(k)?.sub(k)?.norm())
}

/// True when the same rotation applied to every factor fixes the state at
/// every grid angle, i.e. `‖(R ⊗ … ⊗ R) k − k‖ < tol` throughout.
pub fn is_rotationally_invariant<T: Scalar>(k: &Ket<T>, c: T, grid: &[T], tol: T) -> Result<bool> {
    if k.factors() < 2 {
        return Err(Error::InvalidInput(
            "invariance check needs at least two factors".into(),
        ));
    }
    for &theta in grid {
        if invariance_residual(k, c, theta)? >= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariance up to a global phase: the residual minimizes over the phase
/// of the rotated state instead of demanding exact equality.
pub fn is_rotationally_invariant_up_to_phase<T: Scalar>(
    k: &Ket<T>,
    c: T,
    grid: &[T],
    tol: T,
) -> Result<bool> {
    if k.factors() < 2 {
        return Err(Error::InvalidInput(
            "invariance check needs at least two factors".into(),
        ));
    }
    require_two_level(k)?;
    for &theta in grid {
        let r = rotation(&RotationSpec::new(theta, c));
        let u = r.kron_power(k.factors())?;
        let rotated = u.apply(k)?;
        let overlap = k.inner(&rotated)?.norm();
        let residual_sqr = rotated.norm_sqr() + k.norm_sqr() - (overlap + overlap);
        if residual_sqr.max(T::zero()).sqrt() >= tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default angle grid for invariance checks: 64 uniform points on
/// `[0, 2π)` followed by 16 seed-fixed pseudo-random points.
pub fn default_invariance_grid<T: Scalar>() -> Vec<T> {
    let tau = T::PI() + T::PI();
    let mut grid: Vec<T> = (0..64)
        .map(|i| tau * T::from(i).unwrap() / T::from(64).unwrap())
        .collect();
    let mut rng = stream_rng(GRID_SEED, 0);
    for _ in 0..16 {
        let u: T = NumCast::from(unit_f64(&mut rng)).unwrap();
        grid.push(tau * u);
    }
    grid
}

/// True when at every grid angle the two-particle state lies in the span
/// of one correlated pair basis — `{s⊗s, s⁻⊗s⁻}` (parallel values) or
/// `{s⊗s⁻, s⁻⊗s}` (opposite values) with `s = spinor(θ, c)` — and both
/// coefficients have magnitude `1/√2` within `tol`.
pub fn is_isc_form<T: Scalar>(k: &Ket<T>, c: T, grid: &[T], tol: T) -> Result<bool> {
    if k.factors() != 2 {
        return Err(Error::FactorCount {
            expected: 2,
            found: k.factors(),
        });
    }
    require_two_level(k)?;
    let norm_tol = T::default_tol().sqrt();
    if !k.is_normalized(norm_tol) {
        return Err(Error::NotNormalized {
            norm: k.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let half = T::one() / T::from(2.0).unwrap().sqrt();
    for &theta in grid {
        let s = spinor(theta, c);
        let so = orthogonal_spinor(&s)?;
        let parallel = (s.tensor(&s), so.tensor(&so));
        let opposite = (s.tensor(&so), so.tensor(&s));
        let mut ok_here = false;
        for (u, v) in [parallel, opposite] {
            let alpha = u.inner(k)?;
            let beta = v.inner(k)?;
            let projected = u.scaled(alpha).add(&v.scaled(beta))?;
            let residual = k.sub(&projected)?.norm();
            if residual < tol
                && (alpha.norm() - half).abs() < tol
                && (beta.norm() - half).abs() < tol
            {
                ok_here = true;
                break;
            }
        }
        if !ok_here {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies to the second factor the basis change `|+> -> |->`,
/// `|-> -> -|+>`, which reverses that particle's measurement direction by
/// π. The parallel-correlated state maps to the singlet; applying the map
/// twice negates the state.
pub fn conjugate_second<T: Scalar>(k: &Ket<T>) -> Result<Ket<T>> {
    if k.factors() != 2 {
        return Err(Error::FactorCount {
            expected: 2,
            found: k.factors(),
        });
    }
    require_two_level(k)?;
    let conj = Operator::from_reals(2, &[T::zero(), -T::one(), T::one(), T::zero()]).unwrap();
    let op = kron(&[&Operator::identity(2), &conj])?;
    op.apply(k)
}

/// Measurement directions, one per particle, sharing a spin constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementAxes<T: Scalar> {
    pub axes: Vec<T>,
    pub c: T,
}

impl<T: Scalar> MeasurementAxes<T> {
    pub fn new(axes: Vec<T>, c: T) -> Self {
        Self { axes, c }
    }
}

/// Probability distribution over measurement-outcome tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T: Scalar> {
    outcomes: BTreeMap<Vec<Sign>, T>,
}

impl<T: Scalar> JointDistribution<T> {
    /// Builds a distribution, checking range and total mass.
    pub fn from_outcomes(outcomes: BTreeMap<Vec<Sign>, T>) -> Result<Self> {
        let slack = T::from(1e-9).unwrap();
        let mut mass = T::zero();
        let mut particles = None;
        for (tuple, &p) in &outcomes {
            match particles {
                None => particles = Some(tuple.len()),
                Some(n) if n != tuple.len() => {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: tuple.len(),
                    })
                }
                _ => {}
            }
            if p < -slack || p > T::one() + slack {
                return Err(Error::InvalidInput("probability out of range".into()));
            }
            mass += p;
        }
        if (mass - T::one()).abs() > slack {
            return Err(Error::InvalidInput("probabilities do not sum to 1".into()));
        }
        Ok(Self { outcomes })
    }

    pub fn particles(&self) -> usize {
        self.outcomes.keys().next().map_or(0, |t| t.len())
    }

    /// Probability of one outcome tuple (zero when absent).
    pub fn prob(&self, tuple: &[Sign]) -> T {
        self.outcomes.get(tuple).copied().unwrap_or_else(T::zero)
    }

    pub fn total_mass(&self) -> T {
        self.outcomes
            .values()
            .copied()
            .fold(T::zero(), |a, b| a + b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Sign>, T)> {
        self.outcomes.iter().map(|(k, &v)| (k, v))
    }

    /// Marginal distribution of one particle.
    pub fn marginal(&self, particle: usize) -> Result<BTreeMap<Sign, T>> {
        if particle >= self.particles() {
            return Err(Error::InvalidInput("particle index out of range".into()));
        }
        let mut out = BTreeMap::new();
        out.insert(Sign::Plus, T::zero());
        out.insert(Sign::Minus, T::zero());
        for (tuple, p) in self.iter() {
            *out.get_mut(&tuple[particle]).unwrap() += p;
        }
        Ok(out)
    }

    /// Largest single-outcome probability.
    pub fn max_probability(&self) -> T {
        self.outcomes
            .values()
            .copied()
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Enumerates all `{Plus, Minus}^n` tuples with particle 0 most
/// significant.
pub fn outcome_tuples(n: usize) -> Vec<Vec<Sign>> {
    (0..1usize << n)
        .map(|bits| {
            (0..n)
                .map(|p| {
                    if bits >> (n - 1 - p) & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect()
        })
        .collect()
}

/// Born-rule distribution of measuring each particle of `k` along its
/// axis: `P(outcomes) = |<b_1 ⊗ … ⊗ b_n, k>|²` with `b_i` the spinor of
/// axis `i` for outcome `+1` and its orthogonal spinor for `-1`.
pub fn spectral_probability<T: Scalar>(
    k: &Ket<T>,
    axes: &MeasurementAxes<T>,
) -> Result<JointDistribution<T>> {
    require_two_level(k)?;
    let n = k.factors();
    if axes.axes.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: axes.axes.len(),
        });
    }
    let norm_tol = T::default_tol().sqrt();
    if !k.is_normalized(norm_tol) {
        return Err(Error::NotNormalized {
            norm: k.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    let plus_states: Vec<Ket<T>> = axes.axes.iter().map(|&t| spinor(t, axes.c)).collect();
    let minus_states: Vec<Ket<T>> = plus_states
        .iter()
        .map(|s| orthogonal_spinor(s))
        .collect::<Result<_>>()?;
    let mut outcomes = BTreeMap::new();
    for tuple in outcome_tuples(n) {
        let basis: Vec<&Ket<T>> = tuple
            .iter()
            .enumerate()
            .map(|(i, sign)| match sign {
                Sign::Plus => &plus_states[i],
                Sign::Minus => &minus_states[i],
            })
            .collect();
        let amp = tensor(&basis)?.inner(k)?;
        outcomes.insert(tuple, amp.norm_sqr());
    }
    JointDistribution::from_outcomes(outcomes)
}

/// Restriction of `d` to outcomes where `particle` equals `value`,
/// renormalized.
pub fn conditional<T: Scalar>(
    d: &JointDistribution<T>,
    particle: usize,
    value: Sign,
) -> Result<JointDistribution<T>> {
    if particle >= d.particles() {
        return Err(Error::InvalidInput("particle index out of range".into()));
    }
    let mass: T = d
        .iter()
        .filter(|(tuple, _)| tuple[particle] == value)
        .map(|(_, p)| p)
        .fold(T::zero(), |a, b| a + b);
    if mass <= T::zero() {
        return Err(Error::ZeroProbabilityEvent);
    }
    let outcomes = d
        .iter()
        .filter(|(tuple, _)| tuple[particle] == value)
        .map(|(tuple, p)| (tuple.clone(), p / mass))
        .collect();
    JointDistribution::from_outcomes(outcomes)
}
