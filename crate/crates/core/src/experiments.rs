//! Quantitative checks: Fermi-gas ground energy, the spin-1 beam
//! distribution with Monte Carlo model discrimination, moment-generating
//! function independence checks, and seeded measurement sampling.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;

use crate::hilbert::Ket;
use crate::rng::{stream_rng, unit_f64};
use crate::spin::{make_singlet, spectral_probability, JointDistribution, MeasurementAxes, Sign};
use crate::{Error, Result};

/// Ascending single-particle energy levels.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLevels<T> {
    levels: Vec<T>,
}

impl<T: Clone + PartialOrd> EnergyLevels<T> {
    pub fn new(levels: Vec<T>) -> Result<Self> {
        for w in levels.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidInput("levels must be ascending".into()));
            }
        }
        if levels.iter().any(|l| l.partial_cmp(l).is_none()) {
            return Err(Error::InvalidInput("non-finite level".into()));
        }
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }
}

/// Ground energy of an even number of particles filling the levels two per
/// level: `2·(E_1 + … + E_n)` for `2n` particles. Works for exact rational
/// level values as well as floats.
pub fn fermi_ground_energy<T>(levels: &EnergyLevels<T>, particles: usize) -> Result<T>
where
    T: Clone + PartialOrd + Zero + std::ops::Add<Output = T>,
{
    if !particles.is_multiple_of(2) {
        return Err(Error::InvalidInput("particle count must be even".into()));
    }
    let pairs = particles / 2;
    if pairs > levels.levels.len() {
        return Err(Error::LengthMismatch {
            expected: pairs,
            found: levels.levels.len(),
        });
    }
    let mut total = T::zero();
    for level in levels.levels.iter().take(pairs) {
        total = total + level.clone() + level.clone();
    }
    Ok(total)
}

/// Competing models for the observed spin value of a spin-1 beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeuteronModel {
    /// The triplet as two independent uniform ±1/2 spins: {1/4, 1/2, 1/4}.
    IndependentPair,
    /// Uniform over the three observed values: {1/3, 1/3, 1/3}.
    UniformTriplet,
    /// A user-supplied distribution, for dependence hypotheses between
    /// the two built-in models.
    Custom(SpinOneDistribution),
}

/// Exact distribution over the observed values {+1, 0, -1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinOneDistribution {
    pub plus: Rational64,
    pub zero: Rational64,
    pub minus: Rational64,
}

impl SpinOneDistribution {
    /// Builds a distribution, checking nonnegativity and unit mass.
    pub fn new(plus: Rational64, zero: Rational64, minus: Rational64) -> Result<Self> {
        let zero_r = Rational64::zero();
        if plus < zero_r || zero < zero_r || minus < zero_r {
            return Err(Error::InvalidInput("negative probability".into()));
        }
        if plus + zero + minus != Rational64::new(1, 1) {
            return Err(Error::InvalidInput("probabilities must sum to 1".into()));
        }
        Ok(Self { plus, zero, minus })
    }

    /// Probabilities in the order `[+1, 0, -1]`.
    pub fn probs_f64(&self) -> [f64; 3] {
        [
            *self.plus.numer() as f64 / *self.plus.denom() as f64,
            *self.zero.numer() as f64 / *self.zero.denom() as f64,
            *self.minus.numer() as f64 / *self.minus.denom() as f64,
        ]
    }
}

/// Exact model distribution. The independent-pair model is derived by
/// convolving two uniform ±1/2 spins over their four joint outcomes.
pub fn deuteron_exact(model: DeuteronModel) -> SpinOneDistribution {
    match model {
        DeuteronModel::IndependentPair => {
            let quarter = Rational64::new(1, 4);
            let mut plus = Rational64::zero();
            let mut zero = Rational64::zero();
            let mut minus = Rational64::zero();
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    match s1 + s2 {
                        2 => plus += quarter,
                        0 => zero += quarter,
                        -2 => minus += quarter,
                        _ => unreachable!(),
                    }
                }
            }
            SpinOneDistribution { plus, zero, minus }
        }
        DeuteronModel::UniformTriplet => {
            let third = Rational64::new(1, 3);
            SpinOneDistribution {
                plus: third,
                zero: third,
                minus: third,
            }
        }
        DeuteronModel::Custom(dist) => dist,
    }
}

/// Pearson chi-square statistic of observed counts against expected
/// probabilities.
pub fn chi_square_statistic(counts: &[u64], probs: &[f64]) -> f64 {
    assert_eq!(counts.len(), probs.len());
    let n: u64 = counts.iter().sum();
    assert!(n > 0, "chi-square needs at least one observation");
    let n = n as f64;
    counts
        .iter()
        .zip(probs.iter())
        .map(|(&o, &p)| {
            let expected = n * p;
            let diff = o as f64 - expected;
            diff * diff / expected
        })
        .sum()
}

/// Survival function of the chi-square distribution with 2 degrees of
/// freedom, `P(X² > x) = exp(-x/2)` — the exact p-value for a 3-outcome
/// goodness-of-fit test.
pub fn chi_square_pvalue_2df(statistic: f64) -> f64 {
    (-statistic / 2.0).exp()
}

/// Counts of the three observed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutcomeCounts {
    pub plus: u64,
    pub zero: u64,
    pub minus: u64,
}

impl OutcomeCounts {
    pub fn total(&self) -> u64 {
        self.plus + self.zero + self.minus
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.plus, self.zero, self.minus]
    }
}

/// Chi-square statistic and its 2-df p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodnessOfFit {
    pub statistic: f64,
    pub p_value: f64,
}

fn goodness_of_fit(counts: &OutcomeCounts, model: DeuteronModel) -> GoodnessOfFit {
    let statistic = chi_square_statistic(&counts.as_array(), &deuteron_exact(model).probs_f64());
    GoodnessOfFit {
        statistic,
        p_value: chi_square_pvalue_2df(statistic),
    }
}

/// One simulated beam run with its fit against both models.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub model: DeuteronModel,
    pub samples: u64,
    pub seed: u64,
    pub counts: OutcomeCounts,
    /// Empirical frequencies in the order `[+1, 0, -1]`.
    pub frequencies: [f64; 3],
    pub fit_independent_pair: GoodnessOfFit,
    pub fit_uniform_triplet: GoodnessOfFit,
}

/// Draws `samples` observed values from the model and reports counts,
/// frequencies, and the chi-square fit against both models. Deterministic
/// for a given seed.
pub fn deuteron_simulate(model: DeuteronModel, samples: u64, seed: u64) -> SampleReport {
    assert!(samples >= 1, "need at least one sample");
    let probs = deuteron_exact(model).probs_f64();
    let mut rng = stream_rng(seed, 0);
    let mut counts = OutcomeCounts::default();
    for _ in 0..samples {
        let u = unit_f64(&mut rng);
        if u < probs[0] {
            counts.plus += 1;
        } else if u < probs[0] + probs[1] {
            counts.zero += 1;
        } else {
            counts.minus += 1;
        }
    }
    let n = samples as f64;
    SampleReport {
        model,
        samples,
        seed,
        counts,
        frequencies: [
            counts.plus as f64 / n,
            counts.zero as f64 / n,
            counts.minus as f64 / n,
        ],
        fit_independent_pair: goodness_of_fit(&counts, DeuteronModel::IndependentPair),
        fit_uniform_triplet: goodness_of_fit(&counts, DeuteronModel::UniformTriplet),
    }
}

/// Estimated rejection rates of the wrong model, both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerReport {
    pub samples: u64,
    pub alpha: f64,
    pub trials: u32,
    pub base_seed: u64,
    /// Fraction of trials with data from the independent-pair model where
    /// the uniform-triplet fit is rejected at level `alpha`.
    pub reject_triplet_given_pair: f64,
    /// Fraction of trials with data from the uniform-triplet model where
    /// the independent-pair fit is rejected at level `alpha`.
    pub reject_pair_given_triplet: f64,
}

/// Simulates `trials` seeded runs per direction and counts how often a
/// chi-square test at level `alpha` rejects the model the data did not
/// come from. Rejection means `p_value <= alpha`.
pub fn discrimination_power(samples: u64, alpha: f64, trials: u32, base_seed: u64) -> PowerReport {
    assert!(samples >= 1, "need at least one sample");
    assert!(trials >= 1, "need at least one trial");
    let mut reject_triplet = 0u32;
    let mut reject_pair = 0u32;
    for trial in 0..trials {
        let seed_pair = base_seed.wrapping_add(2 * trial as u64);
        let seed_triplet = base_seed.wrapping_add(2 * trial as u64 + 1);
        let from_pair = deuteron_simulate(DeuteronModel::IndependentPair, samples, seed_pair);
        if from_pair.fit_uniform_triplet.p_value <= alpha {
            reject_triplet += 1;
        }
        let from_triplet = deuteron_simulate(DeuteronModel::UniformTriplet, samples, seed_triplet);
        if from_triplet.fit_independent_pair.p_value <= alpha {
            reject_pair += 1;
        }
    }
    PowerReport {
        samples,
        alpha,
        trials,
        base_seed,
        reject_triplet_given_pair: reject_triplet as f64 / trials as f64,
        reject_pair_given_triplet: reject_pair as f64 / trials as f64,
    }
}

/// Moment-generating-function comparison for two uniform ±1/2 spins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MgfReport {
    pub t: f64,
    /// `M(S_1) = M(S_2)`, the common marginal value.
    pub marginal: f64,
    /// `M(S_1) · M(S_2)`.
    pub product_of_marginals: f64,
    /// `M(S_1 + S_2)` for independent spins.
    pub independent_product: f64,
    /// `M(S_1 + S_2)` when the spins are singlet-coupled on a common axis.
    pub coupled_value: f64,
}

/// Evaluates the multiplication rule `M(S_1)M(S_2) = M(S_1+S_2)` at `t`
/// by enumerating the joint distributions: the independent case satisfies
/// it, while singlet coupling pins `S_1 + S_2` to 0 and breaks it for
/// every `t ≠ 0`.
pub fn mgf_check(t: f64) -> Result<MgfReport> {
    if t.abs() > 50.0 {
        return Err(Error::InvalidInput("|t| must be at most 50".into()));
    }
    let value = |s: Sign| 0.5 * s.value() as f64;
    let marginal: f64 = [Sign::Plus, Sign::Minus]
        .iter()
        .map(|&s| 0.5 * (t * value(s)).exp())
        .sum();
    let mut independent_product = 0.0;
    for s1 in [Sign::Plus, Sign::Minus] {
        for s2 in [Sign::Plus, Sign::Minus] {
            independent_product += 0.25 * (t * (value(s1) + value(s2))).exp();
        }
    }
    let coupled =
        spectral_probability(&make_singlet(), &MeasurementAxes::new(vec![0.0, 0.0], 0.5))?;
    let coupled_value = coupled
        .iter()
        .map(|(tuple, p)| p * (t * (value(tuple[0]) + value(tuple[1]))).exp())
        .sum();
    Ok(MgfReport {
        t,
        marginal,
        product_of_marginals: marginal * marginal,
        independent_product,
        coupled_value,
    })
}

/// Draws i.i.d. outcome tuples from the Born-rule distribution of `k`
/// along `axes`; deterministic per seed. Only outcomes that occurred
/// appear in the counts.
pub fn sample_measurements(
    k: &Ket<f64>,
    axes: &MeasurementAxes<f64>,
    samples: u64,
    seed: u64,
) -> Result<BTreeMap<Vec<Sign>, u64>> {
    let distribution = spectral_probability(k, axes)?;
    Ok(sample_distribution(&distribution, samples, seed))
}

/// Draws from an already-computed outcome distribution.
pub fn sample_distribution(
    distribution: &JointDistribution<f64>,
    samples: u64,
    seed: u64,
) -> BTreeMap<Vec<Sign>, u64> {
    let outcomes: Vec<(&Vec<Sign>, f64)> = distribution.iter().collect();
    let mut cumulative = Vec::with_capacity(outcomes.len());
    let mut acc = 0.0;
    for (_, p) in &outcomes {
        acc += p;
        cumulative.push(acc);
    }
    let mut counts: BTreeMap<Vec<Sign>, u64> = BTreeMap::new();
    let mut rng = stream_rng(seed, 0);
    for _ in 0..samples {
        let u = unit_f64(&mut rng) * acc;
        let idx = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(outcomes.len() - 1);
        *counts.entry(outcomes[idx].0.clone()).or_insert(0) += 1;
    }
    counts
}

/// Total-variation distance between empirical counts and an exact
/// distribution.
pub fn total_variation(counts: &BTreeMap<Vec<Sign>, u64>, exact: &JointDistribution<f64>) -> f64 {
    let n: u64 = counts.values().sum();
    if n == 0 {
        return 1.0;
    }
    let n = n as f64;
    0.5 * exact
        .iter()
        .map(|(tuple, p)| {
            let emp = counts.get(tuple).copied().unwrap_or(0) as f64 / n;
            (emp - p).abs()
        })
        .sum::<f64>()
}
