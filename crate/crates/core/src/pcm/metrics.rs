use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pcm::coding::CodedStream;
use crate::pcm::quantizer::QuantizedSignal;
use crate::pcm::sampling::SampledSignal;
use crate::scalar::Real;

/// Signal-to-quantization-noise ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sqnr<T> {
    Db(T),
    /// No quantization error at all.
    Exact,
    /// Nonzero error on a zero-energy signal.
    NoSignal,
}

impl<T: Real> Sqnr<T> {
    pub fn db(self) -> Option<T> {
        match self {
            Sqnr::Db(v) => Some(v),
            _ => None,
        }
    }

    /// SQNR from signal and error energies.
    pub fn from_energies(signal: T, noise: T) -> Self {
        if noise == T::zero() {
            Sqnr::Exact
        } else if signal == T::zero() {
            Sqnr::NoSignal
        } else {
            Sqnr::Db(T::lit(10.0) * (signal / noise).log10())
        }
    }
}

impl<T: Serialize> Serialize for Sqnr<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sqnr::Db(v) => v.serialize(s),
            Sqnr::Exact => s.serialize_str("exact"),
            Sqnr::NoSignal => s.serialize_str("no-signal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConversionMetrics<T> {
    pub max_abs_error: T,
    pub sqnr_db: Sqnr<T>,
    pub bit_rate_bps: T,
    pub payload_bytes_per_second: T,
}

/// Bytes per second of raw PCM at `sample_rate` with `bits` per sample.
pub fn storage_bytes_per_second<T: Real>(sample_rate: T, bits: u8) -> T {
    sample_rate * T::from_u8(bits).unwrap() / T::lit(8.0)
}

pub fn metrics<T: Real>(
    s: &SampledSignal<T>,
    qs: &QuantizedSignal<T>,
    cs: &CodedStream<T>,
) -> Result<ConversionMetrics<T>> {
    let n = s.values.len();
    if qs.errors.len() != n || cs.codewords.len() != n {
        return Err(Error::InternalInconsistency(format!(
            "stage lengths differ: {n} samples, {} quantized, {} codewords",
            qs.errors.len(),
            cs.codewords.len()
        )));
    }
    let max_abs_error = qs.errors.iter().fold(T::zero(), |m, e| m.max(e.abs()));
    let signal = s.values.iter().fold(T::zero(), |acc, &x| acc + x * x);
    let noise = qs.errors.iter().fold(T::zero(), |acc, &e| acc + e * e);
    Ok(ConversionMetrics {
        max_abs_error,
        sqnr_db: Sqnr::from_energies(signal, noise),
        bit_rate_bps: cs.bit_rate,
        payload_bytes_per_second: cs.bit_rate / T::lit(8.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_figures() {
        assert_eq!(storage_bytes_per_second(8000.0f64, 8), 8000.0);
        assert_eq!(storage_bytes_per_second(16_000.0f64, 16), 32_000.0);
        assert_eq!(storage_bytes_per_second(44_000.0f64, 16), 88_000.0);
    }

    #[test]
    fn sqnr_markers() {
        assert_eq!(Sqnr::from_energies(1.0f64, 0.0), Sqnr::Exact);
        assert_eq!(Sqnr::from_energies(0.0f64, 0.0), Sqnr::Exact);
        assert_eq!(Sqnr::from_energies(0.0f64, 1.0), Sqnr::NoSignal);
        assert_eq!(Sqnr::from_energies(100.0f64, 1.0), Sqnr::Db(20.0));
    }
}
