//! PCM conversion workbench.
//!
//! A periodic test signal is synthesized from a DC offset and six harmonics
//! ([`signal`]), then sampled, quantized and coded with every intermediate
//! kept ([`pcm`]). [`diff`] adds DPCM and delta modulation, and [`session`]
//! wraps one conversion as a stage-by-stage walk-through.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`). The `*64`
//! aliases below fix the scalar to `f64`, which is what the CLI and the HTTP
//! service use.

pub mod diff;
pub mod error;
pub mod pcm;
pub mod scalar;
pub mod session;
pub mod signal;

pub use error::{Error, Result};
pub use scalar::Real;
pub use signal::{preset, HarmonicSpec, Preset, RenderedCurve};

pub type HarmonicSpec64 = signal::HarmonicSpec<f64>;
pub type RenderedCurve64 = signal::RenderedCurve<f64>;
pub type SampledSignal64 = pcm::SampledSignal<f64>;
pub type QuantizerConfig64 = pcm::QuantizerConfig<f64>;
pub type QuantizedSignal64 = pcm::QuantizedSignal<f64>;
pub type CodedStream64 = pcm::CodedStream<f64>;
pub type ConversionMetrics64 = pcm::ConversionMetrics<f64>;
pub type DpcmStream64 = diff::DpcmStream<f64>;
pub type DeltaStream64 = diff::DeltaStream<f64>;
pub type Session64 = session::Session<f64>;
pub type SessionRegistry64 = session::SessionRegistry<f64>;

pub type HarmonicSpec32 = signal::HarmonicSpec<f32>;
pub type SampledSignal32 = pcm::SampledSignal<f32>;
pub type QuantizerConfig32 = pcm::QuantizerConfig<f32>;
