use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::signal::HarmonicSpec;

/// Uniformly sampled signal: `values[n] = x(n T)` for `n = 0..N`.
///
/// The window end is excluded, so `N` samples cover exactly `N T` seconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledSignal<T> {
    pub period_t: T,
    pub sample_rate: T,
    pub instants: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> SampledSignal<T> {
    /// Wrap raw samples taken every `period_t` seconds starting at 0.
    pub fn from_values(values: Vec<T>, period_t: T) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::invalid("samples", "at least 2 samples are required"));
        }
        if !(period_t.is_finite() && period_t > T::zero()) {
            return Err(Error::invalid("period", "sampling period must be positive"));
        }
        let instants = (0..values.len())
            .map(|n| T::from_count(n) * period_t)
            .collect();
        Ok(SampledSignal {
            period_t,
            sample_rate: period_t.recip(),
            instants,
            values,
        })
    }

    pub fn sample_count(&self) -> usize {
        self.values.len()
    }
}

/// Sample `n_samples` points uniformly over the display window of `spec`.
pub fn sample<T: Real>(spec: &HarmonicSpec<T>, n_samples: usize) -> Result<SampledSignal<T>> {
    if n_samples < 2 {
        return Err(Error::invalid("samples", "at least 2 samples are required"));
    }
    let count = T::from_count(n_samples);
    let period_t = spec.window() / count;
    let instants: Vec<T> = (0..n_samples)
        .map(|n| T::from_count(n) * period_t)
        .collect();
    let values = instants.iter().map(|&t| spec.eval(t)).collect();
    Ok(SampledSignal {
        period_t,
        sample_rate: count * spec.fundamental() / T::from_u32(spec.periods()).unwrap(),
        instants,
        values,
    })
}

/// Outcome of checking a sample rate against the sampling theorem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NyquistReport<T> {
    pub satisfied: bool,
    /// Minimum admissible rate, Hz.
    pub limit: T,
    pub highest_harmonic: Option<usize>,
}

/// Minimum sample rate for a signal whose content tops out at `max_frequency` Hz.
pub fn nyquist_rate<T: Real>(max_frequency: T) -> T {
    T::two() * max_frequency
}

/// Compare `sample_rate` with twice the highest harmonic actually present.
/// A DC-only signal has limit 0 and is always satisfied.
pub fn nyquist_check<T: Real>(spec: &HarmonicSpec<T>, sample_rate: T) -> NyquistReport<T> {
    let highest = spec.highest_harmonic();
    let top = highest.map_or(T::zero(), |h| T::from_count(h) * spec.fundamental());
    let limit = nyquist_rate(top);
    NyquistReport {
        satisfied: sample_rate >= limit,
        limit,
        highest_harmonic: highest,
    }
}
