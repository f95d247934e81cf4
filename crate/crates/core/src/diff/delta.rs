//! Linear delta modulation: one bit per sample, tracker moves by a fixed step.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcm::{QuantizerConfig, SampledSignal};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaStream<T> {
    pub step: T,
    /// `true` = tracker steps up.
    pub bits: Vec<bool>,
    pub reconstruction: Vec<T>,
    pub bit_rate: T,
}

/// Twice the PCM step.
pub fn default_delta_step<T: Real>(pcm_q: &QuantizerConfig<T>) -> T {
    T::two() * pcm_q.step
}

fn check_step<T: Real>(step: T) -> Result<()> {
    if step.is_finite() && step > T::zero() {
        Ok(())
    } else {
        Err(Error::invalid("step", "delta step must be positive"))
    }
}

fn track<T: Real>(prev: T, up: bool, step: T) -> T {
    if up {
        prev + step
    } else {
        prev - step
    }
}

/// The tracker starts at 0; a sample equal to the tracker counts as "up".
pub fn delta_encode<T: Real>(s: &SampledSignal<T>, step: T) -> Result<DeltaStream<T>> {
    check_step(step)?;
    let mut prev = T::zero();
    let mut bits = Vec::with_capacity(s.values.len());
    let mut reconstruction = Vec::with_capacity(s.values.len());
    for &x in &s.values {
        let up = x >= prev;
        prev = track(prev, up, step);
        bits.push(up);
        reconstruction.push(prev);
    }
    Ok(DeltaStream {
        step,
        bits,
        reconstruction,
        bit_rate: s.sample_rate,
    })
}

pub fn delta_decode<T: Real>(stream: &DeltaStream<T>) -> Result<Vec<T>> {
    check_step(stream.step)?;
    Ok(stream
        .bits
        .iter()
        .scan(T::zero(), |prev, &up| {
            *prev = track(*prev, up, stream.step);
            Some(*prev)
        })
        .collect())
}
