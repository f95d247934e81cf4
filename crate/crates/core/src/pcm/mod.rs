//! The three PCM stages: uniform sampling, uniform quantization and binary
//! coding, with conversion metrics and band-limited reconstruction.

pub mod coding;
pub mod metrics;
pub mod quantizer;
pub mod reconstruct;
pub mod sampling;

pub use coding::{bits_for_levels, encode, transfer_rate, CodedStream, Codeword};
pub use metrics::{metrics, storage_bytes_per_second, ConversionMetrics, Sqnr};
pub use quantizer::{
    check_bits, default_range, make_quantizer, quantize, Quantized, QuantizedSignal, QuantizerConfig,
    MAX_BITS, MIN_BITS,
};
pub use reconstruct::{reconstruct, sinc};
pub use sampling::{nyquist_check, nyquist_rate, sample, NyquistReport, SampledSignal};
