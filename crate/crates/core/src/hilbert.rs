//! Dense complex linear algebra over tensor products of small factors.
//!
//! A [`Ket`] is an amplitude vector over a tensor product of
//! finite-dimensional factors. Spin states use two-level factors with the
//! index convention `|+> -> bit 0`, `|-> -> bit 1` and particle 1 as the
//! most significant bit; the statistics layer also builds kets whose
//! factors have other dimensions (flattened Fock states, spatial
//! stand-ins).

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// Complex amplitude.
pub type Amplitude<T> = Complex<T>;

/// Dense state vector over a tensor product of finite-dimensional factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T: Scalar> {
    dims: Vec<usize>,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> Ket<T> {
    /// Builds a ket from its factor dimensions and amplitude vector.
    pub fn new(dims: Vec<usize>, amps: Vec<Complex<T>>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyInput);
        }
        if dims.contains(&0) {
            return Err(Error::InvalidInput("factor dimension must be >= 1".into()));
        }
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(Error::LengthMismatch {
                expected: total,
                found: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite amplitude".into()));
        }
        Ok(Self { dims, amps })
    }

    /// Single-factor ket with the given amplitudes.
    pub fn single(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        Self::new(vec![dim], amps)
    }

    /// Single-factor ket from real amplitudes.
    pub fn single_real(amps: &[T]) -> Result<Self> {
        Self::single(amps.iter().map(|&r| Complex::new(r, T::zero())).collect())
    }

    /// Ket over `dims` from real amplitudes.
    pub fn from_reals(dims: Vec<usize>, amps: &[T]) -> Result<Self> {
        Self::new(
            dims,
            amps.iter().map(|&r| Complex::new(r, T::zero())).collect(),
        )
    }

    /// Zero vector over `dims`.
    pub fn zero(dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        Self::new(dims, vec![Complex::zero(); total])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of tensor factors.
    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension (product of factor dimensions).
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    /// Inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b))
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    /// True when the norm is at most `tol`.
    pub fn is_zero(&self, tol: T) -> bool {
        self.norm() <= tol
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| *a * factor).collect(),
        }
    }

    pub fn scaled_real(&self, factor: T) -> Self {
        self.scaled(Complex::new(factor, T::zero()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps: self
                .amps
                .iter()
                .zip(other.amps.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps: self
                .amps
                .iter()
                .zip(other.amps.iter())
                .map(|(a, b)| *a - *b)
                .collect(),
        })
    }

    /// Normalized copy; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::zero() {
            return Err(Error::InvalidInput(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(self.scaled_real(n.recip()))
    }

    /// Largest absolute difference between matching amplitudes.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max))
    }

    /// Amplitude-wise equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other).unwrap() <= tol
    }

    /// Binary tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(*a * *b);
            }
        }
        Self { dims, amps }
    }

    /// Reorders tensor factors: slot `j` of the result holds factor
    /// `map[j]` of the input, so a product ket `v_0 ⊗ … ⊗ v_{n-1}` maps to
    /// `v_{map[0]} ⊗ … ⊗ v_{map[n-1]}`.
    pub fn permute_factors(&self, map: &[usize]) -> Result<Self> {
        let n = self.factors();
        if map.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: map.len(),
            });
        }
        let mut seen = vec![false; n];
        for &s in map {
            if s >= n || seen[s] {
                return Err(Error::InvalidInput(
                    "factor map is not a permutation".into(),
                ));
            }
            seen[s] = true;
        }
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        let new_dims: Vec<usize> = map.iter().map(|&s| self.dims[s]).collect();
        let total = self.dim();
        let mut amps = vec![Complex::zero(); total];
        let mut digits = vec![0usize; n];
        for slot in amps.iter_mut() {
            let mut src = 0usize;
            for j in 0..n {
                src += digits[j] * strides[map[j]];
            }
            *slot = self.amps[src];
            for j in (0..n).rev() {
                digits[j] += 1;
                if digits[j] < new_dims[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        Ok(Self {
            dims: new_dims,
            amps,
        })
    }
}

/// Single-factor basis state `|+>` = `[1, 0]`.
pub fn basis_plus<T: Scalar>() -> Ket<T> {
    Ket::single(vec![Complex::one(), Complex::zero()]).unwrap()
}

/// Single-factor basis state `|->` = `[0, 1]`.
pub fn basis_minus<T: Scalar>() -> Ket<T> {
    Ket::single(vec![Complex::zero(), Complex::one()]).unwrap()
}

/// Unit spinor `[cos(c·theta), sin(c·theta)]` for measurement direction
/// `theta` and spin constant `c` (1/2 for spin-1/2, 1 for photons).
pub fn spinor<T: Scalar>(theta: T, c: T) -> Ket<T> {
    let angle = c * theta;
    Ket::single_real(&[angle.cos(), angle.sin()]).unwrap()
}

/// Orthogonal spinor with the fixed phase convention `[a, b] -> [-b̄, ā]`.
///
/// Applying it twice yields `-s`.
pub fn orthogonal_spinor<T: Scalar>(s: &Ket<T>) -> Result<Ket<T>> {
    if s.factors() != 1 || s.dim() != 2 {
        return Err(Error::FactorCount {
            expected: 1,
            found: s.factors(),
        });
    }
    let norm_tol = T::default_tol().sqrt();
    if !s.is_normalized(norm_tol) {
        return Err(Error::NotNormalized {
            norm: s.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ket::single(vec![-s.amp(1).conj(), s.amp(0).conj()])
}

/// Tensor product of the listed kets in the given order.
pub fn tensor<T: Scalar>(parts: &[&Ket<T>]) -> Result<Ket<T>> {
    let (first, rest) = parts.split_first().ok_or(Error::EmptyInput)?;
    let mut out = (*first).clone();
    for part in rest {
        out = out.tensor(part);
    }
    Ok(out)
}

/// Dense square operator, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Scalar> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> Operator<T> {
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyInput);
        }
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_reals(dim: usize, entries: &[T]) -> Result<Self> {
        Self::new(
            dim,
            entries
                .iter()
                .map(|&r| Complex::new(r, T::zero()))
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex::one();
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    /// Matrix-vector product; the result keeps the ket's factor structure.
    pub fn apply(&self, k: &Ket<T>) -> Result<Ket<T>> {
        if self.dim != k.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: k.dim(),
            });
        }
        let mut amps = vec![Complex::zero(); self.dim];
        for (r, out) in amps.iter_mut().enumerate() {
            let mut acc = Complex::zero();
            for c in 0..self.dim {
                acc += self.entry(r, c) * k.amp(c);
            }
            *out = acc;
        }
        Ok(Ket {
            dims: k.dims.clone(),
            amps,
        })
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![Complex::zero(); d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex::zero();
                for m in 0..d {
                    acc += self.entry(r, m) * other.entry(m, c);
                }
                entries[r * d + c] = acc;
            }
        }
        Ok(Self { dim: d, entries })
    }

    /// Kronecker product of `self` with itself, `n` copies.
    pub fn kron_power(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = kron(&[&out, self])?;
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max))
    }
}

/// Kronecker product of the listed operators in particle order.
pub fn kron<T: Scalar>(ops: &[&Operator<T>]) -> Result<Operator<T>> {
    let (first, rest) = ops.split_first().ok_or(Error::EmptyInput)?;
    let mut out = (*first).clone();
    for op in rest {
        let da = out.dim;
        let db = op.dim;
        let d = da * db;
        let mut entries = vec![Complex::zero(); d * d];
        for ra in 0..da {
            for ca in 0..da {
                let a = out.entry(ra, ca);
                for rb in 0..db {
                    for cb in 0..db {
                        entries[(ra * db + rb) * d + (ca * db + cb)] = a * op.entry(rb, cb);
                    }
                }
            }
        }
        out = Operator { dim: d, entries };
    }
    Ok(out)
}
