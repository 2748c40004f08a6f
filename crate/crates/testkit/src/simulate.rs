//! Synthetic series with planted episodes of joint locking.

use corrsphere::{TimeSeries, TimeSeriesSet64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Range of the private sinusoid periods, in samples.
pub const PERIOD_RANGE: (f64, f64) = (10.0, 40.0);
/// Weight of the sinusoid in each series' own process; the rest is AR(1).
pub const OWN_SINUSOID_WEIGHT: f64 = 0.8;
/// AR(1) coefficient of the private roughness component.
pub const OWN_AR: f64 = 0.5;
/// AR(1) coefficient of the shared driver.
pub const DRIVER_AR: f64 = 0.8;

/// Half-open sample range `[start, end)` coupled with strength `coupling`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Episode {
    pub start: usize,
    pub end: usize,
    pub coupling: f64,
}

impl Episode {
    pub fn contains(&self, index: usize) -> bool {
        (self.start..self.end).contains(&index)
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n_series: usize,
    pub length: usize,
    pub episodes: Vec<Episode>,
    pub noise_sigma: f64,
    pub rng_seed: u64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("need at least 2 series, got {0}")]
    TooFewSeries(usize),
    #[error("need at least 2 samples, got {0}")]
    TooShort(usize),
    #[error("noise sigma must be finite and positive, got {0}")]
    BadNoise(f64),
    #[error("episode {index} [{start}, {end}) is empty or outside [0, {length})")]
    EpisodeRange { index: usize, start: usize, end: usize, length: usize },
    #[error("episode {index} coupling {coupling} is outside [0, 1]")]
    BadCoupling { index: usize, coupling: f64 },
    #[error("episode {index} overlaps or precedes the previous one")]
    Unsorted { index: usize },
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.n_series < 2 {
            return Err(SpecError::TooFewSeries(self.n_series));
        }
        if self.length < 2 {
            return Err(SpecError::TooShort(self.length));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma > 0.0) {
            return Err(SpecError::BadNoise(self.noise_sigma));
        }
        let mut previous_end = 0;
        for (index, e) in self.episodes.iter().enumerate() {
            if e.start >= e.end || e.end > self.length {
                return Err(SpecError::EpisodeRange { index, start: e.start, end: e.end, length: self.length });
            }
            if !(0.0..=1.0).contains(&e.coupling) {
                return Err(SpecError::BadCoupling { index, coupling: e.coupling });
            }
            if e.start < previous_end {
                return Err(SpecError::Unsorted { index });
            }
            previous_end = e.end;
        }
        Ok(())
    }

    /// Coupling strength at sample `t` (0 outside every episode).
    pub fn coupling_at(&self, t: usize) -> f64 {
        self.episodes.iter().find(|e| e.contains(t)).map_or(0.0, |e| e.coupling)
    }
}

/// Generates the series described by `spec`.
///
/// Each series owns a unit-variance process: a sinusoid with random period
/// in [`PERIOD_RANGE`] and phase, mixed with an AR(1) roughness term. A
/// unit-variance AR(1) driver is shared by all series. At sample `t` with
/// coupling `λ` the value is `λ·driver + (1 − λ)·own + σ·noise`.
///
/// The generator is ChaCha8 seeded from `rng_seed`, so output is
/// bit-reproducible for a fixed spec.
pub fn simulate(spec: &SyntheticSpec) -> Result<TimeSeriesSet64, SpecError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let n = spec.n_series;
    let periods: Vec<f64> = (0..n).map(|_| rng.random_range(PERIOD_RANGE.0..PERIOD_RANGE.1)).collect();
    let phases: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
    let innovation = |phi: f64| (1.0 - phi * phi).sqrt();
    let mut normal = move || -> f64 { StandardNormal.sample(&mut rng) };

    let mut driver = normal();
    let mut rough: Vec<f64> = (0..n).map(|_| normal()).collect();
    let mut values = vec![Vec::with_capacity(spec.length); n];
    let w_sin = OWN_SINUSOID_WEIGHT;
    let w_ar = (1.0 - w_sin * w_sin).sqrt();
    for t in 0..spec.length {
        if t > 0 {
            driver = DRIVER_AR * driver + innovation(DRIVER_AR) * normal();
        }
        let lambda = spec.coupling_at(t);
        for i in 0..n {
            if t > 0 {
                rough[i] = OWN_AR * rough[i] + innovation(OWN_AR) * normal();
            }
            let sinusoid = std::f64::consts::SQRT_2 * (TAU * t as f64 / periods[i] + phases[i]).sin();
            let own = w_sin * sinusoid + w_ar * rough[i];
            values[i].push(lambda * driver + (1.0 - lambda) * own + spec.noise_sigma * normal());
        }
    }
    let series = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| TimeSeries::new(format!("s{i}"), 0, 1, v).expect("finite values"))
        .collect();
    Ok(TimeSeriesSet64::new(series).expect("aligned by construction"))
}
