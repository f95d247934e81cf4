//! Uniform midpoint quantizer.
//!
//! The range `[lo, hi]` is split into `L = 2^bits` intervals
//! `I_k = (lo + (k-1) step, lo + k step]`, `k = 1..=L`, and every input in
//! `I_k` is replaced by the interval midpoint `y_k = lo + (k - 1/2) step`.
//! An input exactly equal to `lo` is not covered by any `I_k`; it goes to
//! level 1 without being flagged as clipped. Inputs below `lo` or above `hi`
//! saturate to level 1 or `L` and are flagged.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcm::sampling::SampledSignal;
use crate::scalar::Real;
use crate::signal::HarmonicSpec;

pub const MIN_BITS: u8 = 1;
pub const MAX_BITS: u8 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizerConfig<T> {
    pub bits: u8,
    pub range_lo: T,
    pub range_hi: T,
    pub level_count: u32,
    pub step: T,
}

/// Where one input landed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantized<T> {
    /// 1-based level index.
    pub level: u32,
    pub value: T,
    pub clipped: bool,
}

pub fn check_bits(bits: u8) -> Result<()> {
    if (MIN_BITS..=MAX_BITS).contains(&bits) {
        Ok(())
    } else {
        Err(Error::invalid(
            "bits",
            format!("bit depth must be between {MIN_BITS} and {MAX_BITS}, got {bits}"),
        ))
    }
}

/// Build a `bits`-bit uniform quantizer on `[lo, hi]`.
pub fn make_quantizer<T: Real>(bits: u8, lo: T, hi: T) -> Result<QuantizerConfig<T>> {
    check_bits(bits)?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRange {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let level_count = 1u32 << bits;
    let step = (hi - lo) / T::from_u32(level_count).unwrap();
    if !(step > T::zero() && lo + step > lo) {
        return Err(Error::InvalidRange {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(QuantizerConfig {
        bits,
        range_lo: lo,
        range_hi: hi,
        level_count,
        step,
    })
}

/// Symmetric range `[-P, P]` with `P` the analytic peak bound of `spec`, so
/// that no sample of the signal clips. The zero signal gets `[-1, 1]`.
pub fn default_range<T: Real>(spec: &HarmonicSpec<T>) -> (T, T) {
    let p = spec.peak_bound();
    if p > T::zero() {
        (-p, p)
    } else {
        (-T::one(), T::one())
    }
}

impl<T: Real> QuantizerConfig<T> {
    /// Right edge of interval `k`; `edge(0) == lo` and `edge(L) == hi`.
    pub fn edge(&self, k: u32) -> T {
        if k >= self.level_count {
            self.range_hi
        } else {
            self.range_lo + T::from_u32(k).unwrap() * self.step
        }
    }

    /// Reconstruction value `y_k` of level `k` (1-based).
    pub fn reconstruction(&self, level: u32) -> T {
        self.range_lo + (T::from_u32(level).unwrap() - T::half()) * self.step
    }

    /// All `L` reconstruction levels, ascending.
    pub fn levels(&self) -> Vec<T> {
        (1..=self.level_count).map(|k| self.reconstruction(k)).collect()
    }

    pub fn quantize_value(&self, x: T) -> Quantized<T> {
        let (level, clipped) = if x.is_nan() {
            (1, true)
        } else if x <= self.range_lo {
            (1, x < self.range_lo)
        } else if x > self.range_hi {
            (self.level_count, true)
        } else {
            (self.locate(x), false)
        };
        Quantized {
            level,
            value: self.reconstruction(level),
            clipped,
        }
    }

    /// Smallest `k` with `x <= edge(k)`, for `lo < x <= hi`.
    fn locate(&self, x: T) -> u32 {
        let guess = ((x - self.range_lo) / self.step).ceil();
        let mut k = guess
            .to_u32()
            .unwrap_or(self.level_count)
            .clamp(1, self.level_count);
        // the guess can be off by one next to an edge; settle against the edges proper
        while k > 1 && x <= self.edge(k - 1) {
            k -= 1;
        }
        while k < self.level_count && x > self.edge(k) {
            k += 1;
        }
        k
    }

    pub fn quantize(&self, s: &SampledSignal<T>) -> QuantizedSignal<T> {
        quantize(s, self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantizedSignal<T> {
    pub levels: Vec<u32>,
    pub values: Vec<T>,
    pub errors: Vec<T>,
    pub clipped: Vec<bool>,
}

impl<T> QuantizedSignal<T> {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn clipped_count(&self) -> usize {
        self.clipped.iter().filter(|&&c| c).count()
    }
}

pub fn quantize<T: Real>(s: &SampledSignal<T>, q: &QuantizerConfig<T>) -> QuantizedSignal<T> {
    let n = s.values.len();
    let mut out = QuantizedSignal {
        levels: Vec::with_capacity(n),
        values: Vec::with_capacity(n),
        errors: Vec::with_capacity(n),
        clipped: Vec::with_capacity(n),
    };
    for &x in &s.values {
        let r = q.quantize_value(x);
        out.levels.push(r.level);
        out.values.push(r.value);
        out.errors.push(x - r.value);
        out.clipped.push(r.clipped);
    }
    out
}
