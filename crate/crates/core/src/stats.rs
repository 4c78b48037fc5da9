//! Frequency estimates, deviation-variance curves, fringe visibility and
//! goodness of fit.

use rayon::prelude::*;
use thiserror::Error;

use crate::elements::BeamSplitterSpec;
use crate::experiments::{
    run_single_bs, Arrival, Discard, ExperimentConfig, ExperimentError, ExperimentKind,
};
use crate::rng::derive_seed;
use crate::scalar::Scalar;
use crate::selection::EngineKind;

/// Width of the acceptance band, in standard errors.
pub const BAND_SIGMAS: f64 = 4.0;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("no trials")]
    Empty,
    #[error("run lengths must be non-empty and strictly ascending")]
    RunLengths,
    #[error("at least {min} replicas required, got {got}")]
    TooFewReplicas { min: usize, got: usize },
    #[error("visibility undefined: max + min = 0")]
    UndefinedVisibility,
    #[error("expected count {expected} below 5 for outcome {index}")]
    InsufficientSample { index: usize, expected: f64 },
    #[error("observed and expected lists differ in length")]
    LengthMismatch,
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}

/// Binomial proportion with its standard error and 4σ band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate<T> {
    pub n: u64,
    pub successes: u64,
    pub p_hat: T,
    pub sigma: T,
    /// `p_hat ± 4σ`, clipped to `[0, 1]`.
    pub band: (T, T),
}

impl<T: Scalar> FrequencyEstimate<T> {
    pub fn contains(&self, p: T) -> bool {
        self.band.0 <= p && p <= self.band.1
    }
}

/// Estimate from `(successes, failures)`.
pub fn estimate_frequency<T: Scalar>(
    counts: (u64, u64),
) -> Result<FrequencyEstimate<T>, StatsError> {
    let (successes, failures) = counts;
    let n = successes + failures;
    if n == 0 {
        return Err(StatsError::Empty);
    }
    let p_hat = T::from_count(successes) / T::from_count(n);
    let sigma = (p_hat * (T::one() - p_hat) / T::from_count(n)).sqrt();
    let half = T::lit(BAND_SIGMAS) * sigma;
    Ok(FrequencyEstimate {
        n,
        successes,
        p_hat,
        sigma,
        band: ((p_hat - half).max(T::zero()), (p_hat + half).min(T::one())),
    })
}

/// Spread of `count_I − N·p` across independent replicas, per run length.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceCurve<T> {
    pub run_lengths: Vec<u64>,
    pub variance_of_deviation: Vec<T>,
    pub replicas: usize,
}

impl<T: Scalar> VarianceCurve<T> {
    /// Least-squares slope of variance against run length, through the origin.
    pub fn growth_rate(&self) -> T {
        let (num, den) = self
            .run_lengths
            .iter()
            .zip(&self.variance_of_deviation)
            .fold((T::zero(), T::zero()), |(num, den), (&n, &v)| {
                let x = T::from_count(n);
                (num + x * v, den + x * x)
            });
        num / den
    }
}

pub const MIN_REPLICAS: usize = 30;

/// Relaxation settings for [`variance_curve_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Relaxation<T> {
    pub tau: T,
    pub arrival: Arrival<T>,
}

impl<T: Scalar> Default for Relaxation<T> {
    fn default() -> Self {
        Self {
            tau: T::infinity(),
            arrival: Arrival::Fixed { interval: T::one() },
        }
    }
}

/// Variance of the deviation from expectation for single-splitter runs with
/// target `p`, without imbalance relaxation.
pub fn variance_curve<T: Scalar>(
    engine: EngineKind<T>,
    p: T,
    run_lengths: &[u64],
    replicas: usize,
    base_seed: u64,
) -> Result<VarianceCurve<T>, StatsError> {
    variance_curve_with(
        engine,
        p,
        run_lengths,
        replicas,
        base_seed,
        Relaxation::default(),
    )
}

/// [`variance_curve`] with an explicit relaxation time and arrival process.
///
/// Replica `r` at run-length index `i` is seeded with
/// `derive_seed(base_seed, i·replicas + r)`; replicas run in parallel.
pub fn variance_curve_with<T: Scalar>(
    engine: EngineKind<T>,
    p: T,
    run_lengths: &[u64],
    replicas: usize,
    base_seed: u64,
    relax: Relaxation<T>,
) -> Result<VarianceCurve<T>, StatsError> {
    if run_lengths.is_empty() || run_lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StatsError::RunLengths);
    }
    if replicas < MIN_REPLICAS {
        return Err(StatsError::TooFewReplicas {
            min: MIN_REPLICAS,
            got: replicas,
        });
    }
    let splitter = BeamSplitterSpec::with_transmittance(p).map_err(ExperimentError::from)?;

    let mut variances = Vec::with_capacity(run_lengths.len());
    for (i, &n) in run_lengths.iter().enumerate() {
        let deviations = (0..replicas)
            .into_par_iter()
            .map(|r| {
                let seed = derive_seed(base_seed, (i * replicas + r) as u64);
                let cfg = ExperimentConfig::new(ExperimentKind::SingleBs { splitter }, n, seed)
                    .with_engine(engine)
                    .with_arrival(relax.arrival)
                    .with_tau(relax.tau);
                run_single_bs(&cfg, &mut Discard).map(|s| s.deviation())
            })
            .collect::<Result<Vec<T>, _>>()?;
        variances.push(sample_variance(&deviations));
    }
    Ok(VarianceCurve {
        run_lengths: run_lengths.to_vec(),
        variance_of_deviation: variances,
        replicas,
    })
}

/// Unbiased sample variance; 0 for fewer than two values.
pub fn sample_variance<T: Scalar>(xs: &[T]) -> T {
    if xs.len() < 2 {
        return T::zero();
    }
    let n = T::from_count(xs.len() as u64);
    let mean = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let ss = xs
        .iter()
        .fold(T::zero(), |a, &x| a + (x - mean) * (x - mean));
    ss / (n - T::one())
}

/// Fringe visibility `(max − min)/(max + min)` of `freq_D1` over a sweep of
/// `(delta, freq_D1)` points.
pub fn visibility<T: Scalar>(sweep: &[(T, T)]) -> Result<T, StatsError> {
    if sweep.is_empty() {
        return Err(StatsError::Empty);
    }
    let (lo, hi) = sweep
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &(_, f)| {
            (lo.min(f), hi.max(f))
        });
    let sum = hi + lo;
    if sum == T::zero() {
        return Err(StatsError::UndefinedVisibility);
    }
    Ok((hi - lo) / sum)
}

/// Pearson statistic `Σ (obs − exp)²/exp`.
pub fn chi_square_gof<T: Scalar>(counts: &[u64], expected_probs: &[T]) -> Result<T, StatsError> {
    if counts.len() != expected_probs.len() {
        return Err(StatsError::LengthMismatch);
    }
    let n = T::from_count(counts.iter().sum());
    let mut stat = T::zero();
    for (index, (&obs, &p)) in counts.iter().zip(expected_probs).enumerate() {
        let expected = n * p;
        if expected < T::lit(5.0) {
            return Err(StatsError::InsufficientSample {
                index,
                expected: expected.as_f64(),
            });
        }
        let d = T::from_count(obs) - expected;
        stat = stat + d * d / expected;
    }
    Ok(stat)
}
