//! Fixed-width binary coding of quantizer levels.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pcm::quantizer::{check_bits, QuantizedSignal, QuantizerConfig};
use crate::scalar::Real;

/// One `width`-bit word, printed most significant bit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Codeword {
    value: u16,
    width: u8,
}

impl Codeword {
    pub fn new(value: u16, width: u8) -> Result<Self> {
        check_bits(width)?;
        if width < 16 && value >> width != 0 {
            return Err(Error::InternalInconsistency(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Codeword { value, width })
    }

    /// Word for 1-based quantizer `level`: the binary form of `level - 1`.
    pub fn for_level(level: u32, width: u8) -> Result<Self> {
        let index = level
            .checked_sub(1)
            .and_then(|v| u16::try_from(v).ok())
            .ok_or_else(|| Error::InternalInconsistency(format!("level {level} out of range")))?;
        Codeword::new(index, width)
    }

    /// Parse a string of `0`/`1` characters, MSB first.
    pub fn parse(bits: &str) -> Result<Self> {
        let width = u8::try_from(bits.len())
            .ok()
            .filter(|w| (1..=16).contains(w))
            .ok_or_else(|| Error::Decode(format!("codeword `{bits}` must be 1 to 16 bits long")))?;
        let mut value = 0u16;
        for c in bits.chars() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Decode(format!("codeword `{bits}` is not binary"))),
            };
            value = (value << 1) | bit;
        }
        Ok(Codeword { value, width })
    }

    pub fn value(self) -> u16 {
        self.value
    }

    pub fn width(self) -> u8 {
        self.width
    }

    /// 1-based level this word encodes.
    pub fn level(self) -> u32 {
        u32::from(self.value) + 1
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = usize::from(self.width))
    }
}

impl Serialize for Codeword {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodedStream<T> {
    pub bits_per_word: u8,
    pub codewords: Vec<Codeword>,
    pub bit_rate: T,
}

impl<T> CodedStream<T> {
    pub fn payload_bits(&self) -> usize {
        self.codewords.len() * usize::from(self.bits_per_word)
    }

    pub fn decode_levels(&self) -> Result<Vec<u32>> {
        self.codewords
            .iter()
            .map(|w| {
                if w.width() == self.bits_per_word {
                    Ok(w.level())
                } else {
                    Err(Error::Decode(format!(
                        "codeword `{w}` is not {} bits wide",
                        self.bits_per_word
                    )))
                }
            })
            .collect()
    }
}

/// `log2(level_count)`, exact for powers of two.
pub fn bits_for_levels<T: Real>(level_count: u64) -> T {
    if level_count.is_power_of_two() {
        T::from_u32(level_count.trailing_zeros()).unwrap()
    } else {
        T::from_u64(level_count).unwrap().log2()
    }
}

/// Transfer rate `f * log2(k)` in bits per second for `k` levels at `f` samples/s.
pub fn transfer_rate<T: Real>(sample_rate: T, level_count: u64) -> T {
    sample_rate * bits_for_levels::<T>(level_count)
}

pub fn encode<T: Real>(
    qs: &QuantizedSignal<T>,
    q: &QuantizerConfig<T>,
    sample_rate: T,
) -> Result<CodedStream<T>> {
    let codewords = qs
        .levels
        .iter()
        .map(|&level| {
            if (1..=q.level_count).contains(&level) {
                Codeword::for_level(level, q.bits)
            } else {
                Err(Error::InternalInconsistency(format!(
                    "level {level} outside 1..={}",
                    q.level_count
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CodedStream {
        bits_per_word: q.bits,
        codewords,
        bit_rate: transfer_rate(sample_rate, u64::from(q.level_count)),
    })
}
