//! Request inputs shared by the CLI and the HTTP API, so both reject the
//! same things for the same reasons.

use pcmbench_core::pcm::{check_bits, QuantizerConfig};
use pcmbench_core::{Error, HarmonicSpec64, Preset, Result};
use serde::Deserialize;

pub const DEFAULT_F1_MANTISSA: f64 = 1.0;
pub const DEFAULT_F1_EXPONENT: i32 = 3;
pub const DEFAULT_PERIODS: i64 = 1;
pub const DEFAULT_SAMPLES: i64 = 20;
pub const DEFAULT_BITS: i64 = 3;

/// Either a preset name or explicit coefficients, never both.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalInputs {
    pub preset: Option<String>,
    pub a: Option<[f64; 6]>,
    pub b: Option<[f64; 6]>,
    pub f1_mantissa: Option<f64>,
    pub f1_exponent: Option<i32>,
    pub dc: Option<f64>,
    pub periods: Option<i64>,
}

impl SignalInputs {
    fn has_explicit(&self) -> bool {
        self.a.is_some()
            || self.b.is_some()
            || self.f1_mantissa.is_some()
            || self.f1_exponent.is_some()
            || self.dc.is_some()
            || self.periods.is_some()
    }

    pub fn to_spec(&self) -> Result<HarmonicSpec64> {
        if let Some(name) = &self.preset {
            if self.has_explicit() {
                return Err(Error::InvalidArgument {
                    field: "preset",
                    reason: "a preset and explicit coefficients are mutually exclusive".into(),
                });
            }
            return Ok(name.parse::<Preset>()?.spec());
        }
        let periods = self.periods.unwrap_or(DEFAULT_PERIODS);
        let periods = u32::try_from(periods)
            .ok()
            .filter(|&p| p >= 1)
            .ok_or_else(|| Error::InvalidArgument {
                field: "periods",
                reason: format!("at least 1 period is required, got {periods}"),
            })?;
        HarmonicSpec64::new(
            self.a.unwrap_or([0.0; 6]),
            self.b.unwrap_or([0.0; 6]),
            self.f1_mantissa.unwrap_or(DEFAULT_F1_MANTISSA),
            self.f1_exponent.unwrap_or(DEFAULT_F1_EXPONENT),
            self.dc.unwrap_or(0.0),
            periods,
        )
    }
}

pub fn validate_samples(samples: i64) -> Result<usize> {
    usize::try_from(samples)
        .ok()
        .filter(|&n| n >= 2)
        .ok_or_else(|| Error::InvalidArgument {
            field: "samples",
            reason: format!("at least 2 samples are required (minimum 2), got {samples}"),
        })
}

pub fn validate_bits(field: &'static str, bits: i64) -> Result<u8> {
    let b = u8::try_from(bits).map_err(|_| Error::InvalidArgument {
        field,
        reason: format!("bit depth must be between 1 and 16, got {bits}"),
    })?;
    check_bits(b).map_err(|e| match e {
        Error::InvalidArgument { reason, .. } => Error::InvalidArgument { field, reason },
        other => other,
    })?;
    Ok(b)
}

/// Full conversion input: signal, sample count, bit depth and an optional
/// quantizer range override.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConversionInputs {
    pub preset: Option<String>,
    pub a: Option<[f64; 6]>,
    pub b: Option<[f64; 6]>,
    pub f1_mantissa: Option<f64>,
    pub f1_exponent: Option<i32>,
    pub dc: Option<f64>,
    pub periods: Option<i64>,
    #[serde(default = "default_samples")]
    pub samples: i64,
    #[serde(default = "default_bits")]
    pub bits: i64,
    pub range_lo: Option<f64>,
    pub range_hi: Option<f64>,
}

fn default_samples() -> i64 {
    DEFAULT_SAMPLES
}

fn default_bits() -> i64 {
    DEFAULT_BITS
}

impl Default for ConversionInputs {
    fn default() -> Self {
        ConversionInputs {
            preset: None,
            a: None,
            b: None,
            f1_mantissa: None,
            f1_exponent: None,
            dc: None,
            periods: None,
            samples: DEFAULT_SAMPLES,
            bits: DEFAULT_BITS,
            range_lo: None,
            range_hi: None,
        }
    }
}

/// Validated form of [`ConversionInputs`].
#[derive(Debug, Clone, PartialEq)]
pub struct Conversion {
    pub spec: HarmonicSpec64,
    pub samples: usize,
    pub bits: u8,
    pub range: Option<(f64, f64)>,
}

impl ConversionInputs {
    pub fn with_signal(signal: SignalInputs) -> Self {
        ConversionInputs {
            preset: signal.preset,
            a: signal.a,
            b: signal.b,
            f1_mantissa: signal.f1_mantissa,
            f1_exponent: signal.f1_exponent,
            dc: signal.dc,
            periods: signal.periods,
            ..Default::default()
        }
    }

    pub fn signal(&self) -> SignalInputs {
        SignalInputs {
            preset: self.preset.clone(),
            a: self.a,
            b: self.b,
            f1_mantissa: self.f1_mantissa,
            f1_exponent: self.f1_exponent,
            dc: self.dc,
            periods: self.periods,
        }
    }

    pub fn validate(&self) -> Result<Conversion> {
        let spec = self.signal().to_spec()?;
        let samples = validate_samples(self.samples)?;
        let bits = validate_bits("bits", self.bits)?;
        let range = match (self.range_lo, self.range_hi) {
            (None, None) => None,
            (Some(lo), Some(hi)) => Some((lo, hi)),
            _ => {
                return Err(Error::InvalidArgument {
                    field: "range",
                    reason: "range_lo and range_hi must be given together".into(),
                })
            }
        };
        Ok(Conversion {
            spec,
            samples,
            bits,
            range,
        })
    }
}

impl Conversion {
    pub fn quantizer_range(&self) -> (f64, f64) {
        self.range
            .unwrap_or_else(|| pcmbench_core::pcm::default_range(&self.spec))
    }

    pub fn quantizer(&self) -> Result<QuantizerConfig<f64>> {
        let (lo, hi) = self.quantizer_range();
        pcmbench_core::pcm::make_quantizer(self.bits, lo, hi)
    }
}
