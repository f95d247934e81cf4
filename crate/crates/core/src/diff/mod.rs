//! Differential codecs: DPCM over quantized prediction residuals and
//! one-bit delta modulation.

pub mod delta;
pub mod dpcm;

pub use delta::{default_delta_step, delta_decode, delta_encode, DeltaStream};
pub use dpcm::{default_diff_range, dpcm_decode, dpcm_encode, DpcmStream};
