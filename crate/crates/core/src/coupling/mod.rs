//! Bell-inequality evaluation and exact local-hidden-variable feasibility.
//!
//! A [`LhvProblem`] prescribes, for `m` measurement directions, the
//! probability that two particles sharing a deterministic sign assignment
//! disagree on each pair of directions. [`lhv_feasibility`] either finds a
//! probability distribution over the `2^m` assignments reproducing every
//! pairwise constraint or returns a certificate that none exists — a
//! violated pairwise inequality or a Farkas vector over the constraint
//! rows, both re-checkable by [`verify_certificate`].

mod simplex;

use std::collections::BTreeMap;

use crate::scalar::{LpScalar, Scalar};
use crate::spin::Sign;
use crate::{Error, Result};
use simplex::{equality_feasibility, Phase1Outcome};

/// Largest supported number of directions (2^m assignments are enumerated).
pub const MAX_DIRECTIONS: usize = 20;

/// Probability that measurements at angle difference `delta` disagree:
/// `sin²(c·delta)`.
pub fn pair_disagreement<T: Scalar>(delta: T, c: T) -> T {
    let s = (c * delta).sin();
    s * s
}

/// One Bell-inequality evaluation: `lhs = ½ sin²(c·θ_ki)` against
/// `rhs = ½ sin²(c·θ_jk) + ½ sin²(c·θ_ij)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellReport<T: Scalar> {
    pub theta_i: T,
    pub theta_j: T,
    pub theta_k: T,
    pub c: T,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub violated: bool,
}

/// Bell decision over prescribed pairwise disagreement probabilities;
/// runs exactly for rational scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct BellDecision<U: LpScalar> {
    pub lhs: U,
    pub rhs: U,
    pub violated: bool,
}

/// Evaluates `p_ki / 2 > p_jk / 2 + p_ij / 2` with ties counting as
/// satisfied.
pub fn bell_check_probs<U: LpScalar>(p_ij: &U, p_jk: &U, p_ki: &U) -> BellDecision<U> {
    let two = U::from_ratio(2, 1);
    let lhs = p_ki.clone() / two.clone();
    let rhs = p_jk.clone() / two.clone() + p_ij.clone() / two;
    let violated = lhs.clone() > rhs.clone() + U::pivot_tol();
    BellDecision { lhs, rhs, violated }
}

/// Evaluates the inequality for measurement angles `theta_i`, `theta_j`,
/// `theta_k`; `violated` requires the margin to exceed the scalar's
/// default tolerance, so exact ties never count as violations.
pub fn bell_check<T: Scalar>(theta_i: T, theta_j: T, theta_k: T, c: T) -> BellReport<T> {
    let p_ij = pair_disagreement((theta_j - theta_i).abs(), c);
    let p_jk = pair_disagreement((theta_k - theta_j).abs(), c);
    let p_ki = pair_disagreement((theta_i - theta_k).abs(), c);
    let half = T::from(0.5).unwrap();
    let lhs = half * p_ki;
    let rhs = half * p_jk + half * p_ij;
    BellReport {
        theta_i,
        theta_j,
        theta_k,
        c,
        lhs,
        rhs,
        margin: lhs - rhs,
        violated: lhs > rhs + T::default_tol(),
    }
}

/// Evaluates the inequality on every ordered triple of grid axes, in
/// lexicographic index order.
pub fn bell_scan<T: Scalar>(axes: &[T], c: T) -> Vec<BellReport<T>> {
    let mut out = Vec::with_capacity(axes.len().pow(3));
    for &ti in axes {
        for &tj in axes {
            for &tk in axes {
                out.push(bell_check(ti, tj, tk, c));
            }
        }
    }
    out
}

/// Number of unordered direction pairs.
pub fn pair_count(m: usize) -> usize {
    m * (m - 1) / 2
}

/// Lexicographic index of the pair `(a, b)`, `a < b`, among all pairs of
/// `m` directions.
pub fn pair_index(m: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < m);
    a * m - a * (a + 1) / 2 + (b - a - 1)
}

/// All pairs `(a, b)` with `a < b < m` in lexicographic order.
pub fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |a| (a + 1..m).map(move |b| (a, b)))
}

/// Pairwise disagreement constraints for `m` measurement directions.
#[derive(Debug, Clone, PartialEq)]
pub struct LhvProblem<U: LpScalar> {
    m: usize,
    pair_probs: Vec<U>,
    directions: Option<Vec<f64>>,
}

impl LhvProblem<f64> {
    /// Problem whose constraints are `sin²(c·Δ)` for the pairwise angle
    /// differences of the given directions.
    pub fn from_directions(directions: &[f64], c: f64) -> Result<Self> {
        if directions.len() < 2 {
            return Err(Error::InvalidInput("need at least two directions".into()));
        }
        let m = directions.len();
        let pair_probs = pairs(m)
            .map(|(a, b)| pair_disagreement((directions[b] - directions[a]).abs(), c))
            .collect();
        let mut problem = Self::from_pair_probs(m, pair_probs)?;
        problem.directions = Some(directions.to_vec());
        Ok(problem)
    }
}

impl<U: LpScalar> LhvProblem<U> {
    /// Problem from explicit pairwise probabilities in lexicographic pair
    /// order.
    pub fn from_pair_probs(m: usize, pair_probs: Vec<U>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("need at least two directions".into()));
        }
        if pair_probs.len() != pair_count(m) {
            return Err(Error::LengthMismatch {
                expected: pair_count(m),
                found: pair_probs.len(),
            });
        }
        if pair_probs.iter().any(|p| *p < U::zero() || *p > U::one()) {
            return Err(Error::InvalidInput("pair probability out of [0, 1]".into()));
        }
        Ok(Self {
            m,
            pair_probs,
            directions: None,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pair_probs(&self) -> &[U] {
        &self.pair_probs
    }

    pub fn pair_prob(&self, a: usize, b: usize) -> &U {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        &self.pair_probs[pair_index(self.m, a, b)]
    }

    pub fn directions(&self) -> Option<&[f64]> {
        self.directions.as_deref()
    }
}

/// Flips the sign convention of one measurement direction: constraints on
/// pairs touching `particle` become `1 - p`. Applying the same flip twice
/// restores the original problem.
pub fn anticorrelated_variant<U: LpScalar>(
    p: &LhvProblem<U>,
    particle: usize,
) -> Result<LhvProblem<U>> {
    if p.m != 3 {
        return Err(Error::LengthMismatch {
            expected: 3,
            found: p.m,
        });
    }
    if particle >= p.m {
        return Err(Error::InvalidInput("particle index out of range".into()));
    }
    let probs = pairs(p.m)
        .map(|(a, b)| {
            let v = p.pair_prob(a, b).clone();
            if a == particle || b == particle {
                U::one() - v
            } else {
                v
            }
        })
        .collect();
    LhvProblem::from_pair_probs(p.m, probs)
}

/// Distribution over deterministic sign assignments (direction 0 first).
#[derive(Debug, Clone, PartialEq)]
pub struct LhvDistribution<U: LpScalar> {
    masses: BTreeMap<Vec<Sign>, U>,
}

impl<U: LpScalar> LhvDistribution<U> {
    pub fn masses(&self) -> &BTreeMap<Vec<Sign>, U> {
        &self.masses
    }

    pub fn mass(&self, assignment: &[Sign]) -> U {
        self.masses.get(assignment).cloned().unwrap_or_else(U::zero)
    }

    pub fn total_mass(&self) -> U {
        self.masses
            .values()
            .fold(U::zero(), |acc, v| acc + v.clone())
    }

    /// Disagreement probability the distribution induces on pair `(a, b)`.
    pub fn induced_disagreement(&self, a: usize, b: usize) -> U {
        self.masses
            .iter()
            .filter(|(assignment, _)| assignment[a] != assignment[b])
            .fold(U::zero(), |acc, (_, v)| acc + v.clone())
    }

    /// Largest deviation from the problem's constraints, including the
    /// normalization row.
    pub fn max_constraint_error(&self, problem: &LhvProblem<U>) -> U {
        let mut worst = (self.total_mass() - U::one()).abs();
        for (a, b) in pairs(problem.m) {
            let err = (self.induced_disagreement(a, b) - problem.pair_prob(a, b).clone()).abs();
            if err > worst {
                worst = err;
            }
        }
        worst
    }

    /// True when every constraint is reproduced within `tol`.
    pub fn reproduces(&self, problem: &LhvProblem<U>, tol: &U) -> bool {
        self.max_constraint_error(problem) <= *tol
    }
}

/// Infeasibility certificate, re-checkable by [`verify_certificate`].
#[derive(Debug, Clone, PartialEq)]
pub enum LhvCertificate<U: LpScalar> {
    /// The pairwise inequality `p_ik <= p_ij + p_jk` fails for the named
    /// directions.
    BellInequality {
        i: usize,
        j: usize,
        k: usize,
        lhs: U,
        rhs: U,
    },
    /// Row multipliers `y` (normalization row first, then pairs in
    /// lexicographic order) with `y·A_σ <= 0` for every assignment column
    /// and `y·rhs > 0`.
    Farkas { row_multipliers: Vec<U> },
}

/// Outcome of the feasibility solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LhvResult<U: LpScalar> {
    Feasible(LhvDistribution<U>),
    Infeasible(LhvCertificate<U>),
}

impl<U: LpScalar> LhvResult<U> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LhvResult::Feasible(_))
    }
}

fn assignment_signs(m: usize, index: usize) -> Vec<Sign> {
    (0..m)
        .map(|d| {
            if index >> (m - 1 - d) & 1 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// Entry of the constraint matrix: row 0 is the normalization row, row
/// `1 + p` counts assignments that disagree on pair `p`.
fn constraint_entry<U: LpScalar>(
    pair_list: &[(usize, usize)],
    m: usize,
    row: usize,
    col: usize,
) -> U {
    if row == 0 {
        return U::one();
    }
    let (a, b) = pair_list[row - 1];
    let bit_a = col >> (m - 1 - a) & 1;
    let bit_b = col >> (m - 1 - b) & 1;
    if bit_a != bit_b {
        U::one()
    } else {
        U::zero()
    }
}

/// Decides whether a distribution over deterministic sign assignments can
/// reproduce every pairwise disagreement constraint.
///
/// Feasible problems return a distribution symmetrized over the global
/// sign flip, which reproduces the constraints exactly for rational
/// scalars and within the pivot tolerance for `f64`. Infeasible problems
/// return a violated pairwise inequality when one exists, and otherwise a
/// Farkas vector extracted from the final simplex multipliers.
pub fn lhv_feasibility<U: LpScalar>(problem: &LhvProblem<U>) -> Result<LhvResult<U>> {
    let m = problem.m;
    if m > MAX_DIRECTIONS {
        return Err(Error::TooManyParticles {
            limit: MAX_DIRECTIONS,
            found: m,
        });
    }

    // Pairwise inequality pre-check: a shared assignment that differs on
    // (i, k) must differ on (i, j) or (j, k).
    for a in 0..m {
        for b in a + 1..m {
            for mid in 0..m {
                if mid == a || mid == b {
                    continue;
                }
                let lhs = problem.pair_prob(a, b).clone();
                let rhs = problem.pair_prob(a, mid).clone() + problem.pair_prob(mid, b).clone();
                if lhs > rhs.clone() + U::pivot_tol() {
                    return Ok(LhvResult::Infeasible(LhvCertificate::BellInequality {
                        i: a,
                        j: mid,
                        k: b,
                        lhs,
                        rhs,
                    }));
                }
            }
        }
    }

    let pair_list: Vec<(usize, usize)> = pairs(m).collect();
    let rows = 1 + pair_list.len();
    let cols = 1usize << m;
    let mut rhs = Vec::with_capacity(rows);
    rhs.push(U::one());
    rhs.extend(problem.pair_probs.iter().cloned());

    let outcome = equality_feasibility(rows, cols, &rhs, |i, j| {
        constraint_entry::<U>(&pair_list, m, i, j)
    });

    match outcome {
        Phase1Outcome::Feasible(x) => {
            // Symmetrize over the global flip; it preserves every
            // constraint and yields the canonical ±-balanced solution.
            let two = U::from_ratio(2, 1);
            let mut masses = BTreeMap::new();
            for (idx, v) in x.iter().enumerate() {
                if v.is_negligible() {
                    continue;
                }
                let half = v.clone() / two.clone();
                let flipped = cols - 1 - idx;
                for key_idx in [idx, flipped] {
                    let key = assignment_signs(m, key_idx);
                    let entry = masses.entry(key).or_insert_with(U::zero);
                    *entry = entry.clone() + half.clone();
                }
            }
            Ok(LhvResult::Feasible(LhvDistribution { masses }))
        }
        Phase1Outcome::Infeasible(y) => Ok(LhvResult::Infeasible(LhvCertificate::Farkas {
            row_multipliers: y,
        })),
    }
}

/// Re-checks a certificate against the problem it claims to refute.
pub fn verify_certificate<U: LpScalar>(
    problem: &LhvProblem<U>,
    certificate: &LhvCertificate<U>,
) -> bool {
    let m = problem.m;
    match certificate {
        LhvCertificate::BellInequality { i, j, k, lhs, rhs } => {
            if *i >= m || *j >= m || *k >= m || i == j || j == k || i == k {
                return false;
            }
            let expected_lhs = problem.pair_prob(*i, *k).clone();
            let expected_rhs =
                problem.pair_prob(*i, *j).clone() + problem.pair_prob(*j, *k).clone();
            expected_lhs == *lhs && expected_rhs == *rhs && *lhs > rhs.clone() + U::pivot_tol()
        }
        LhvCertificate::Farkas { row_multipliers: y } => {
            let pair_list: Vec<(usize, usize)> = pairs(m).collect();
            let rows = 1 + pair_list.len();
            if y.len() != rows {
                return false;
            }
            let slack = U::pivot_tol();
            for col in 0..1usize << m {
                let mut dot = U::zero();
                for (i, yi) in y.iter().enumerate() {
                    dot = dot + yi.clone() * constraint_entry::<U>(&pair_list, m, i, col);
                }
                if dot > slack {
                    return false;
                }
            }
            let mut yb = y[0].clone();
            for (p, (a, b)) in pair_list.iter().enumerate() {
                yb = yb + y[p + 1].clone() * problem.pair_prob(*a, *b).clone();
            }
            yb > U::pivot_tol()
        }
    }
}
