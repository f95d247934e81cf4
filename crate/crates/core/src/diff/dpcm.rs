//! First-order closed-loop DPCM.
//!
//! The first sample goes out as a full PCM word. Every later sample sends
//! the quantized difference between itself and the previous *reconstructed*
//! value, so encoder and decoder track the same sequence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcm::{make_quantizer, Codeword, QuantizerConfig, SampledSignal};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DpcmStream<T> {
    pub first_word: Codeword,
    pub diff_bits: u8,
    pub diff_range: T,
    pub diff_codewords: Vec<Codeword>,
    pub reconstruction: Vec<T>,
}

impl<T: Real> DpcmStream<T> {
    /// Bits on the wire: one PCM word plus `N - 1` difference words.
    pub fn payload_bits(&self) -> usize {
        usize::from(self.first_word.width())
            + self.diff_codewords.len() * usize::from(self.diff_bits)
    }

    /// Equivalent bit rate at `sample_rate`, averaged over the stream.
    pub fn bit_rate(&self, sample_rate: T) -> T {
        let n = self.diff_codewords.len() + 1;
        sample_rate * T::from_count(self.payload_bits()) / T::from_count(n)
    }
}

/// Difference range used when the caller does not pick one: a quarter of
/// the PCM range.
pub fn default_diff_range<T: Real>(pcm_q: &QuantizerConfig<T>) -> T {
    (pcm_q.range_hi - pcm_q.range_lo) / T::lit(4.0)
}

fn diff_quantizer<T: Real>(diff_bits: u8, diff_range: T) -> Result<QuantizerConfig<T>> {
    if !(diff_range.is_finite() && diff_range > T::zero()) {
        return Err(Error::invalid(
            "diff_range",
            "difference range must be positive",
        ));
    }
    make_quantizer(diff_bits, -diff_range, diff_range).map_err(|e| match e {
        Error::InvalidArgument { reason, .. } => Error::InvalidArgument {
            field: "diff_bits",
            reason,
        },
        other => other,
    })
}

pub fn dpcm_encode<T: Real>(
    s: &SampledSignal<T>,
    pcm_q: &QuantizerConfig<T>,
    diff_bits: u8,
    diff_range: T,
) -> Result<DpcmStream<T>> {
    let dq = diff_quantizer(diff_bits, diff_range)?;
    let (&x0, rest) = s
        .values
        .split_first()
        .ok_or_else(|| Error::invalid("samples", "at least 1 sample is required"))?;

    let first = pcm_q.quantize_value(x0);
    let first_word = Codeword::for_level(first.level, pcm_q.bits)?;
    let mut reconstruction = Vec::with_capacity(s.values.len());
    reconstruction.push(first.value);
    let mut diff_codewords = Vec::with_capacity(rest.len());
    let mut prev = first.value;
    for &x in rest {
        let d = dq.quantize_value(x - prev);
        diff_codewords.push(Codeword::for_level(d.level, diff_bits)?);
        prev = prev + d.value;
        reconstruction.push(prev);
    }
    Ok(DpcmStream {
        first_word,
        diff_bits,
        diff_range,
        diff_codewords,
        reconstruction,
    })
}

/// Rebuild the reconstruction from the transmitted words alone.
pub fn dpcm_decode<T: Real>(stream: &DpcmStream<T>, pcm_q: &QuantizerConfig<T>) -> Result<Vec<T>> {
    if stream.first_word.width() != pcm_q.bits {
        return Err(Error::Decode(format!(
            "first word `{}` is not {} bits wide",
            stream.first_word, pcm_q.bits
        )));
    }
    let dq = diff_quantizer(stream.diff_bits, stream.diff_range)?;
    let mut prev = pcm_q.reconstruction(stream.first_word.level());
    let mut out = Vec::with_capacity(stream.diff_codewords.len() + 1);
    out.push(prev);
    for w in &stream.diff_codewords {
        if w.width() != stream.diff_bits {
            return Err(Error::Decode(format!(
                "difference word `{w}` is not {} bits wide",
                stream.diff_bits
            )));
        }
        prev = prev + dq.reconstruction(w.level());
        out.push(prev);
    }
    Ok(out)
}
