//! Permutation machinery, antisymmetric and symmetric products, Fock spin
//! states, and the classification of permutable superpositions.

mod compose;

pub use compose::{
    compose_statistics, GroupDescription, StatKind, StatisticsTree, MAX_COMPOSE_PARTICLES,
};

use num_traits::NumCast;

use crate::hilbert::{orthogonal_spinor, tensor, Ket};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Largest particle count whose permutations are enumerated.
pub const MAX_ENUM_PARTICLES: usize = 10;

/// Largest particle count accepted by [`antisymmetrize_fock`].
pub const MAX_FOCK_PARTICLES: usize = 6;

const MAX_STATE_DIM: usize = 1 << 26;

/// `n!` for the particle counts handled here.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A permutation of `{0, …, n-1}` with its sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
    parity: i8,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
            parity: 1,
        }
    }

    /// Builds a permutation from `map[i] = image of i`, validating the
    /// bijection and computing the sign from the inversion count.
    pub fn from_mapping(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidInput("mapping is not a permutation".into()));
            }
            seen[v] = true;
        }
        let mut inversions = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if map[i] > map[j] {
                    inversions += 1;
                }
            }
        }
        Ok(Self {
            map,
            parity: if inversions.is_multiple_of(2) { 1 } else { -1 },
        })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n || a == b {
            return Err(Error::InvalidInput("invalid transposition".into()));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(a, b);
        Ok(Self { map, parity: -1 })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let map = (0..self.len())
            .map(|i| self.apply(other.apply(i)))
            .collect();
        Ok(Self {
            map,
            parity: self.parity * other.parity,
        })
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0usize; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Self {
            map,
            parity: self.parity,
        }
    }
}

/// Lexicographic stream over all permutations of `{0, …, n-1}`.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let item = Permutation::from_mapping(current.clone()).unwrap();
        self.next = next_lexicographic(current);
        Some(item)
    }
}

fn next_lexicographic(mut v: Vec<usize>) -> Option<Vec<usize>> {
    let n = v.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

/// All `n!` permutations in lexicographic order.
pub fn permutations(n: usize) -> Result<Permutations> {
    if n > MAX_ENUM_PARTICLES {
        return Err(Error::TooManyParticles {
            limit: MAX_ENUM_PARTICLES,
            found: n,
        });
    }
    Ok(Permutations {
        next: Some((0..n).collect()),
    })
}

fn permutation_superposition<T: Scalar>(parts: &[Ket<T>], signed: bool) -> Result<Ket<T>> {
    if parts.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = parts.len();
    if n > MAX_ENUM_PARTICLES {
        return Err(Error::TooManyParticles {
            limit: MAX_ENUM_PARTICLES,
            found: n,
        });
    }
    let dims = parts[0].dims();
    for p in parts {
        if p.dims() != dims {
            return Err(Error::DimensionMismatch {
                left: parts[0].dim(),
                right: p.dim(),
            });
        }
    }
    let total = parts[0]
        .dim()
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_STATE_DIM)
        .ok_or_else(|| Error::InvalidInput("combined state dimension too large".into()))?;
    let _ = total;

    let scale = T::one() / T::from(factorial(n)).unwrap().sqrt();
    let mut acc: Option<Ket<T>> = None;
    for perm in permutations(n)? {
        let ordered: Vec<&Ket<T>> = (0..n).map(|slot| &parts[perm.apply(slot)]).collect();
        let mut term = tensor(&ordered)?;
        if signed && perm.parity() < 0 {
            term = term.scaled_real(-T::one());
        }
        acc = Some(match acc {
            None => term,
            Some(sum) => sum.add(&term)?,
        });
    }
    Ok(acc.unwrap().scaled_real(scale))
}

/// The normalized alternating sum `(1/√n!) Σ_σ sign(σ) · ⊗_j parts[σ(j)]`,
/// which is `√(n!)` times the wedge product of the inputs. The result is
/// the zero vector exactly when the inputs are linearly dependent — in
/// particular when two of them coincide.
pub fn antisymmetrize<T: Scalar>(parts: &[Ket<T>]) -> Result<Ket<T>> {
    permutation_superposition(parts, true)
}

/// The normalized symmetric sum `(1/√n!) Σ_σ ⊗_j parts[σ(j)]`; coincident
/// inputs are not renormalized away, so two equal unit inputs yield norm
/// `√2`.
pub fn symmetrize<T: Scalar>(parts: &[Ket<T>]) -> Result<Ket<T>> {
    permutation_superposition(parts, false)
}

/// Classification of a permutable superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticsLabel {
    Fermi,
    Bose,
    NotPermutable,
}

/// Classifies coefficients listed in lexicographic permutation order:
/// `Fermi` when `c_σ = s·sign(σ)/√n!` for a fixed unit `s`, `Bose` when
/// `c_σ = s/√n!`, otherwise `NotPermutable`. Deviations up to `tol` per
/// coefficient are accepted.
pub fn classify_permutable<T: Scalar>(coefficients: &[T], tol: T) -> Result<StatisticsLabel> {
    let len = coefficients.len();
    let n = (0..=MAX_ENUM_PARTICLES)
        .find(|&n| factorial(n) == len)
        .ok_or(Error::InvalidInput(
            "coefficient count is not n! for any supported n".into(),
        ))?;
    let norm_sqr: T = coefficients.iter().map(|&c| c * c).sum();
    if (norm_sqr - T::one()).abs() > T::from(1e-6).unwrap() {
        return Err(Error::NotNormalized {
            norm: norm_sqr.sqrt().to_f64().unwrap_or(f64::NAN),
        });
    }
    let root: T = T::from(factorial(n)).unwrap().sqrt();
    let scale = root.recip();
    let anchor = coefficients[0] * root; // identity permutation comes first
    let parities: Vec<i8> = permutations(n)?.map(|p| p.parity()).collect();

    let fermi = coefficients
        .iter()
        .zip(parities.iter())
        .all(|(&c, &p)| (c - anchor * <T as NumCast>::from(p).unwrap() * scale).abs() <= tol);
    if fermi {
        return Ok(StatisticsLabel::Fermi);
    }
    let bose = coefficients
        .iter()
        .all(|&c| (c - anchor * scale).abs() <= tol);
    if bose {
        return Ok(StatisticsLabel::Bose);
    }
    Ok(StatisticsLabel::NotPermutable)
}

/// A spinor assigned to each of `m` measurement directions.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSpinState<T: Scalar> {
    directions: Vec<T>,
    spinors: Vec<Ket<T>>,
}

impl<T: Scalar> FockSpinState<T> {
    pub fn new(directions: Vec<T>, spinors: Vec<Ket<T>>) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::EmptyInput);
        }
        if directions.len() != spinors.len() {
            return Err(Error::LengthMismatch {
                expected: directions.len(),
                found: spinors.len(),
            });
        }
        let norm_tol = T::default_tol().sqrt();
        for s in &spinors {
            if s.factors() != 1 || s.dim() != 2 {
                return Err(Error::InvalidInput(
                    "each direction needs a single two-level spinor".into(),
                ));
            }
            if !s.is_normalized(norm_tol) {
                return Err(Error::NotNormalized {
                    norm: s.norm().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            directions,
            spinors,
        })
    }

    /// Number of directions `m`.
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[T] {
        &self.directions
    }

    pub fn spinors(&self) -> &[Ket<T>] {
        &self.spinors
    }

    pub fn spinor(&self, k: usize) -> &Ket<T> {
        &self.spinors[k]
    }

    /// The state with every spinor replaced by its orthogonal spinor.
    pub fn opposite(&self) -> Result<Self> {
        let spinors = self
            .spinors
            .iter()
            .map(orthogonal_spinor)
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.directions.clone(), spinors)
    }

    /// Direct-sum layout as a single factor of dimension `2m`,
    /// direction-major: amplitudes of direction 0 first.
    pub fn flattened(&self) -> Ket<T> {
        let mut amps = Vec::with_capacity(2 * self.len());
        for s in &self.spinors {
            amps.extend_from_slice(s.amps());
        }
        Ket::single(amps).unwrap()
    }
}

fn check_directions_match<T: Scalar>(a: &FockSpinState<T>, b: &FockSpinState<T>) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.directions != b.directions {
        return Err(Error::InvalidInput("direction lists differ".into()));
    }
    Ok(())
}

/// Scalar product `Σ_k <a(θ_k), b(θ_k)>` (real part).
pub fn fock_inner<T: Scalar>(a: &FockSpinState<T>, b: &FockSpinState<T>) -> Result<T> {
    check_directions_match(a, b)?;
    let mut acc = T::zero();
    for (sa, sb) in a.spinors.iter().zip(b.spinors.iter()) {
        acc += sa.inner(sb)?.re;
    }
    Ok(acc)
}

/// True when the spinors agree componentwise within `tol` at every
/// direction.
pub fn fock_same<T: Scalar>(a: &FockSpinState<T>, b: &FockSpinState<T>, tol: T) -> Result<bool> {
    check_directions_match(a, b)?;
    for (sa, sb) in a.spinors.iter().zip(b.spinors.iter()) {
        if sa.max_abs_diff(sb)? > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when the spinors are orthogonal within `tol` at every direction.
pub fn fock_opposite<T: Scalar>(
    a: &FockSpinState<T>,
    b: &FockSpinState<T>,
    tol: T,
) -> Result<bool> {
    check_directions_match(a, b)?;
    for (sa, sb) in a.spinors.iter().zip(b.spinors.iter()) {
        if sa.inner(sb)?.norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Antisymmetrized spin part over flattened Fock states: the alternating
/// sum of all orderings of the `2m`-dimensional direct-sum vectors, zero
/// whenever two input states coincide.
pub fn antisymmetrize_fock<T: Scalar>(states: &[FockSpinState<T>]) -> Result<Ket<T>> {
    if states.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = states.len();
    if n > MAX_FOCK_PARTICLES {
        return Err(Error::TooManyParticles {
            limit: MAX_FOCK_PARTICLES,
            found: n,
        });
    }
    for s in &states[1..] {
        check_directions_match(&states[0], s)?;
    }
    let m = states[0].len();
    if m < n {
        return Err(Error::InvalidInput(
            "need at least as many directions as particles".into(),
        ));
    }
    let flattened: Vec<Ket<T>> = states.iter().map(|s| s.flattened()).collect();
    antisymmetrize(&flattened)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{basis_minus, basis_plus, spinor};
    use crate::spin::make_singlet;

    const TOL: f64 = 1e-12;

    #[test]
    fn permutations_of_two() {
        let perms: Vec<Permutation> = permutations(2).unwrap().collect();
        assert_eq!(perms.len(), 2);
        assert!(perms[0].is_identity());
        assert_eq!(perms[0].parity(), 1);
        assert_eq!(perms[1].mapping(), &[1, 0]);
        assert_eq!(perms[1].parity(), -1);
    }

    #[test]
    fn permutations_of_three() {
        let perms: Vec<Permutation> = permutations(3).unwrap().collect();
        assert_eq!(perms.len(), 6);
        let even = perms.iter().filter(|p| p.parity() == 1).count();
        assert_eq!(even, 3);
        // lexicographic order
        let maps: Vec<&[usize]> = perms.iter().map(|p| p.mapping()).collect();
        assert_eq!(
            maps,
            vec![
                &[0, 1, 2][..],
                &[0, 2, 1],
                &[1, 0, 2],
                &[1, 2, 0],
                &[2, 0, 1],
                &[2, 1, 0]
            ]
        );
    }

    #[test]
    fn transpositions_are_odd() {
        assert_eq!(Permutation::transposition(5, 1, 3).unwrap().parity(), -1);
    }

    #[test]
    fn permutation_enumeration_caps_at_ten() {
        assert!(permutations(11).is_err());
        assert_eq!(permutations(7).unwrap().count(), 5040);
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::from_mapping(vec![1, 2, 0]).unwrap();
        let b = Permutation::from_mapping(vec![0, 2, 1]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.mapping(), &[1, 0, 2]);
        assert_eq!(ab.parity(), a.parity() * b.parity());
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn antisymmetrize_two_basis_states_gives_the_singlet() {
        let result = antisymmetrize(&[basis_plus::<f64>(), basis_minus()]).unwrap();
        assert!(result.approx_eq(&make_singlet(), TOL));
    }

    #[test]
    fn antisymmetrize_of_equal_inputs_vanishes() {
        let x = spinor(0.83, 0.5);
        let result = antisymmetrize(&[x.clone(), x]).unwrap();
        assert!(result.is_zero(TOL));
    }

    #[test]
    fn antisymmetrize_three_orthonormal_three_dim_inputs() {
        let e = |i: usize| {
            let mut amps = [0.0; 3];
            amps[i] = 1.0;
            Ket::single_real(&amps).unwrap()
        };
        let result = antisymmetrize(&[e(0), e(1), e(2)]).unwrap();
        // six-term expansion with coefficients ±1/sqrt(6)
        let h = 1.0 / 6f64.sqrt();
        let term = |a: usize, b: usize, c: usize| tensor(&[&e(a), &e(b), &e(c)]).unwrap();
        let expected = term(0, 1, 2)
            .sub(&term(0, 2, 1))
            .unwrap()
            .sub(&term(1, 0, 2))
            .unwrap()
            .add(&term(1, 2, 0))
            .unwrap()
            .add(&term(2, 0, 1))
            .unwrap()
            .sub(&term(2, 1, 0))
            .unwrap()
            .scaled_real(h);
        assert!(result.approx_eq(&expected, TOL));
        assert!((result.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn symmetrize_two_basis_states() {
        let result = symmetrize(&[basis_plus::<f64>(), basis_minus()]).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let expected = Ket::from_reals(vec![2, 2], &[0.0, h, h, 0.0]).unwrap();
        assert!(result.approx_eq(&expected, TOL));
    }

    #[test]
    fn symmetrize_bunches_equal_inputs() {
        let x = spinor(1.9, 0.5);
        let result = symmetrize(&[x.clone(), x.clone()]).unwrap();
        let expected = x.tensor(&x).scaled_real(2f64.sqrt());
        assert!(result.approx_eq(&expected, TOL));
        assert!((result.norm() - 2f64.sqrt()).abs() < TOL);
    }

    #[test]
    fn symmetrize_of_orthonormal_inputs_is_unit_norm() {
        let e = |i: usize| {
            let mut amps = [0.0f64; 3];
            amps[i] = 1.0;
            Ket::single_real(&amps).unwrap()
        };
        let result = symmetrize(&[e(0), e(1), e(2)]).unwrap();
        assert!((result.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn mismatched_part_dimensions_are_rejected() {
        let two = basis_plus::<f64>();
        let three = Ket::single_real(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            antisymmetrize(&[two, three]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn classify_alternating_and_constant_patterns() {
        let n = 3;
        let root = (factorial(n) as f64).sqrt();
        let alternating: Vec<f64> = permutations(n)
            .unwrap()
            .map(|p| p.parity() as f64 / root)
            .collect();
        assert_eq!(
            classify_permutable(&alternating, 1e-12).unwrap(),
            StatisticsLabel::Fermi
        );
        let constant = vec![1.0 / root; factorial(n)];
        assert_eq!(
            classify_permutable(&constant, 1e-12).unwrap(),
            StatisticsLabel::Bose
        );
        // global sign does not matter
        let negated: Vec<f64> = alternating.iter().map(|c| -c).collect();
        assert_eq!(
            classify_permutable(&negated, 1e-12).unwrap(),
            StatisticsLabel::Fermi
        );
    }

    #[test]
    fn classify_the_mixed_counterexample() {
        // lexicographic term order: one flipped sign breaks permutability
        let h = 1.0 / 6f64.sqrt();
        let coeffs = [h, h, h, h, h, -h];
        assert_eq!(
            classify_permutable(&coeffs, 1e-12).unwrap(),
            StatisticsLabel::NotPermutable
        );
    }

    #[test]
    fn counterexample_state_is_not_permutation_invariant_after_merging() {
        // coefficients (+,+,+,+,+,-) over lexicographic orderings with
        // parts[0] = parts[1]: the merged state survives the swap of the
        // last two slots but not a swap involving the first slot.
        let h = 1.0 / 6f64.sqrt();
        let coeffs = [h, h, h, h, h, -h];
        let parts = [spinor(0.4, 0.5), spinor(0.4, 0.5), spinor(2.2, 0.5)];
        let mut acc = Ket::zero(vec![2, 2, 2]).unwrap();
        for (perm, &c) in permutations(3).unwrap().zip(coeffs.iter()) {
            let ordered: Vec<&Ket<f64>> = (0..3).map(|s| &parts[perm.apply(s)]).collect();
            acc = acc.add(&tensor(&ordered).unwrap().scaled_real(c)).unwrap();
        }
        let swapped = acc.permute_factors(&[1, 0, 2]).unwrap();
        assert!(!swapped.approx_eq(&acc, 1e-9));
        assert!(!swapped.approx_eq(&acc.scaled_real(-1.0), 1e-9));
    }

    #[test]
    fn classify_rejects_bad_lengths_and_norms() {
        assert!(classify_permutable(&[0.5, 0.5, 0.5], 1e-12).is_err());
        let unnormalized = [1.0, 1.0];
        assert!(matches!(
            classify_permutable(&unnormalized, 1e-12),
            Err(Error::NotNormalized { .. })
        ));
    }

    fn plus_state(directions: &[f64]) -> FockSpinState<f64> {
        let spinors = directions.iter().map(|_| basis_plus()).collect();
        FockSpinState::new(directions.to_vec(), spinors).unwrap()
    }

    #[test]
    fn fock_inner_same_and_opposite() {
        let dirs = [0.0, 0.7, 1.9];
        let a = plus_state(&dirs);
        assert!((fock_inner(&a, &a).unwrap() - 3.0).abs() < TOL);
        assert!(fock_same(&a, &a, TOL).unwrap());

        let b = a.opposite().unwrap();
        assert!(fock_inner(&a, &b).unwrap().abs() < TOL);
        assert!(fock_opposite(&a, &b, TOL).unwrap());
        assert!(!fock_same(&a, &b, TOL).unwrap());
    }

    #[test]
    fn fock_mixed_components_are_neither_same_nor_opposite() {
        let dirs = [0.0f64, 1.0];
        let a = FockSpinState::new(dirs.to_vec(), vec![basis_plus(), basis_plus()]).unwrap();
        let b = FockSpinState::new(dirs.to_vec(), vec![basis_plus(), basis_minus()]).unwrap();
        assert!((fock_inner(&a, &b).unwrap() - 1.0).abs() < TOL);
        assert!(!fock_same(&a, &b, TOL).unwrap());
        assert!(!fock_opposite(&a, &b, TOL).unwrap());
    }

    #[test]
    fn fock_direction_mismatch_is_rejected() {
        let a = plus_state(&[0.0, 1.0]);
        let b = plus_state(&[0.0, 2.0]);
        assert!(fock_inner(&a, &b).is_err());
    }

    #[test]
    fn fock_antisymmetrization_six_term_expansion() {
        let dirs = [0.0, 0.9, 2.1];
        let s1 = plus_state(&dirs);
        let s2 = s1.opposite().unwrap();
        let s3 = FockSpinState::new(
            dirs.to_vec(),
            dirs.iter().map(|&d| spinor(d + 0.3, 0.5)).collect(),
        )
        .unwrap();

        let result = antisymmetrize_fock(&[s1.clone(), s2.clone(), s3.clone()]).unwrap();

        let v1 = s1.flattened();
        let v2 = s2.flattened();
        let v3 = s3.flattened();
        let t = |a: &Ket<f64>, b: &Ket<f64>, c: &Ket<f64>| tensor(&[a, b, c]).unwrap();
        let expected = t(&v1, &v2, &v3)
            .sub(&t(&v2, &v1, &v3))
            .unwrap()
            .add(&t(&v2, &v3, &v1))
            .unwrap()
            .sub(&t(&v3, &v2, &v1))
            .unwrap()
            .add(&t(&v3, &v1, &v2))
            .unwrap()
            .sub(&t(&v1, &v3, &v2))
            .unwrap()
            .scaled_real(1.0 / 6f64.sqrt());
        assert!(result.approx_eq(&expected, TOL));
    }

    #[test]
    fn fock_antisymmetrization_of_equal_states_vanishes() {
        let dirs = [0.0, 0.9, 2.1];
        let s = plus_state(&dirs);
        let other = FockSpinState::new(
            dirs.to_vec(),
            dirs.iter().map(|&d| spinor(d + 1.0, 0.5)).collect(),
        )
        .unwrap();
        let result = antisymmetrize_fock(&[s.clone(), s.clone(), other]).unwrap();
        assert!(result.is_zero(TOL));
    }

    #[test]
    fn fock_antisymmetrization_of_one_state_is_identity() {
        let s = plus_state(&[0.0, 0.5]);
        let result = antisymmetrize_fock(std::slice::from_ref(&s)).unwrap();
        assert!(result.approx_eq(&s.flattened(), TOL));
    }

    #[test]
    fn fock_antisymmetrization_needs_enough_directions() {
        let dirs = [0.0, 1.0];
        let mk = |shift: f64| {
            FockSpinState::new(
                dirs.to_vec(),
                dirs.iter().map(|&d| spinor(d + shift, 0.5)).collect(),
            )
            .unwrap()
        };
        assert!(antisymmetrize_fock(&[mk(0.0), mk(0.5), mk(1.0)]).is_err());
    }
}
