//! Report rendering for the CLI: aligned text tables, CSV and JSON.
//!
//! Every report is built fully in memory before anything is written.

use std::fmt::Write as _;

use pcmbench_core::diff::{
    default_delta_step, default_diff_range, delta_decode, delta_encode, dpcm_decode, dpcm_encode,
};
use pcmbench_core::pcm::{nyquist_check, sample, Codeword, NyquistReport, Sqnr};
use pcmbench_core::session::Artifacts;
use pcmbench_core::{HarmonicSpec64, Result};
use serde::Serialize;

use crate::inputs::Conversion;

/// CSV column order of the `convert` report.
pub const CONVERT_COLUMNS: [&str; 6] = ["t", "x", "level", "y", "e", "codeword"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn sqnr_text(s: Sqnr<f64>) -> String {
    match s {
        Sqnr::Db(v) => format!("{v:.3} dB"),
        Sqnr::Exact => "exact".into(),
        Sqnr::NoSignal => "no-signal".into(),
    }
}

fn spec_lines(out: &mut String, spec: &HarmonicSpec64) {
    let _ = writeln!(
        out,
        "f1 = {} Hz ({}e{}), periods = {}, window = {} s, dc = {}",
        spec.fundamental(),
        spec.f1_mantissa(),
        spec.f1_exponent(),
        spec.periods(),
        spec.window(),
        spec.dc_offset()
    );
    let _ = writeln!(out, "a (sin) = {:?}", spec.sine_amplitudes());
    let _ = writeln!(out, "b (cos) = {:?}", spec.cosine_amplitudes());
}

pub fn synth(spec: &HarmonicSpec64, points: usize, format: Format) -> Result<String> {
    let curve = spec.render(points)?;
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Synth<'a> {
                spec: &'a HarmonicSpec64,
                t: &'a [f64],
                v: &'a [f64],
            }
            json(&Synth {
                spec,
                t: &curve.t,
                v: &curve.v,
            })
        }
        Format::Csv => {
            let mut out = String::from("t,v\n");
            for (t, v) in curve.t.iter().zip(&curve.v) {
                let _ = writeln!(out, "{t},{v}");
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            spec_lines(&mut out, spec);
            let _ = writeln!(out, "{:>6} {:>14} {:>14}", "k", "t", "v");
            for (k, (t, v)) in curve.t.iter().zip(&curve.v).enumerate() {
                let _ = writeln!(out, "{k:>6} {t:>14.6e} {v:>14.6}");
            }
            out
        }
    })
}

#[derive(Serialize)]
struct ConvertReport<'a> {
    spec: &'a HarmonicSpec64,
    samples: usize,
    bits: u8,
    nyquist: NyquistReport<f64>,
    #[serde(flatten)]
    artifacts: &'a Artifacts<f64>,
}

pub fn conversion_artifacts(conv: &Conversion) -> Result<Artifacts<f64>> {
    let (lo, hi) = conv.quantizer_range();
    Artifacts::compute_with_range(&conv.spec, conv.samples, conv.bits, lo, hi)
}

pub fn convert(conv: &Conversion, format: Format) -> Result<String> {
    let a = conversion_artifacts(conv)?;
    let nyquist = nyquist_check(&conv.spec, a.sampled.sample_rate);
    let rows = a
        .sampled
        .instants
        .iter()
        .zip(&a.sampled.values)
        .zip(a.quantized.levels.iter().zip(&a.quantized.values))
        .zip(a.quantized.errors.iter().zip(&a.coded.codewords));
    Ok(match format {
        Format::Json => json(&ConvertReport {
            spec: &conv.spec,
            samples: conv.samples,
            bits: conv.bits,
            nyquist,
            artifacts: &a,
        }),
        Format::Csv => {
            let mut out = CONVERT_COLUMNS.join(",");
            out.push('\n');
            for (((t, x), (level, y)), (e, w)) in rows {
                let _ = writeln!(out, "{t},{x},{level},{y},{e},{w}");
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            spec_lines(&mut out, &conv.spec);
            let q = &a.quantizer;
            let _ = writeln!(
                out,
                "sampling: N = {}, T = {} s, rate = {} Hz (Nyquist limit {} Hz, {})",
                a.sampled.sample_count(),
                a.sampled.period_t,
                a.sampled.sample_rate,
                nyquist.limit,
                if nyquist.satisfied { "satisfied" } else { "violated" }
            );
            let _ = writeln!(
                out,
                "quantizer: {} bits, L = {}, range [{}, {}], step = {}",
                q.bits, q.level_count, q.range_lo, q.range_hi, q.step
            );
            let m = &a.metrics;
            let _ = writeln!(
                out,
                "metrics: max |e| = {}, SQNR = {}, bit rate = {} bps, {} bytes/s, clipped = {}",
                m.max_abs_error,
                sqnr_text(m.sqnr_db),
                m.bit_rate_bps,
                m.payload_bytes_per_second,
                a.quantized.clipped_count()
            );
            let _ = writeln!(
                out,
                "{:>6} {:>14} {:>12} {:>6} {:>12} {:>12}  codeword",
                "n", "t", "x", "level", "y", "e"
            );
            for (n, (((t, x), (level, y)), (e, w))) in rows.enumerate() {
                let _ = writeln!(
                    out,
                    "{n:>6} {t:>14.6e} {x:>12.6} {level:>6} {y:>12.6} {e:>12.6}  {w}"
                );
            }
            out
        }
    })
}

pub fn dpcm(
    conv: &Conversion,
    diff_bits: u8,
    diff_range: Option<f64>,
    format: Format,
) -> Result<String> {
    let q = conv.quantizer()?;
    let s = sample(&conv.spec, conv.samples)?;
    let range = diff_range.unwrap_or_else(|| default_diff_range(&q));
    let st = dpcm_encode(&s, &q, diff_bits, range)?;
    let decoded = dpcm_decode(&st, &q)?;
    debug_assert_eq!(decoded, st.reconstruction);
    let words: Vec<Codeword> = std::iter::once(st.first_word)
        .chain(st.diff_codewords.iter().copied())
        .collect();
    let pcm_payload = conv.samples * usize::from(conv.bits);
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Dpcm<'a> {
                spec: &'a HarmonicSpec64,
                samples: usize,
                pcm_quantizer: &'a pcmbench_core::QuantizerConfig64,
                sample_rate: f64,
                #[serde(flatten)]
                stream: &'a pcmbench_core::DpcmStream64,
                payload_bits: usize,
                pcm_payload_bits: usize,
                bit_rate: f64,
            }
            json(&Dpcm {
                spec: &conv.spec,
                samples: conv.samples,
                pcm_quantizer: &q,
                sample_rate: s.sample_rate,
                stream: &st,
                payload_bits: st.payload_bits(),
                pcm_payload_bits: pcm_payload,
                bit_rate: st.bit_rate(s.sample_rate),
            })
        }
        Format::Csv => {
            let mut out = String::from("t,x,y_hat,e,codeword\n");
            for (((t, x), y), w) in s.instants.iter().zip(&s.values).zip(&decoded).zip(&words) {
                let _ = writeln!(out, "{t},{x},{y},{},{w}", x - y);
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            spec_lines(&mut out, &conv.spec);
            let _ = writeln!(
                out,
                "dpcm: first word {} bits, {} difference bits on [-{range}, {range}]",
                q.bits, diff_bits
            );
            let _ = writeln!(
                out,
                "payload: {} bits (PCM would need {pcm_payload}), bit rate = {} bps",
                st.payload_bits(),
                st.bit_rate(s.sample_rate)
            );
            let _ = writeln!(
                out,
                "{:>6} {:>14} {:>12} {:>12} {:>12}  codeword",
                "n", "t", "x", "y_hat", "e"
            );
            for (n, (((t, x), y), w)) in s
                .instants
                .iter()
                .zip(&s.values)
                .zip(&decoded)
                .zip(&words)
                .enumerate()
            {
                let _ = writeln!(
                    out,
                    "{n:>6} {t:>14.6e} {x:>12.6} {y:>12.6} {:>12.6}  {w}",
                    x - y
                );
            }
            out
        }
    })
}

pub fn dm(conv: &Conversion, step: Option<f64>, format: Format) -> Result<String> {
    let q = conv.quantizer()?;
    let s = sample(&conv.spec, conv.samples)?;
    let step = step.unwrap_or_else(|| default_delta_step(&q));
    let st = delta_encode(&s, step)?;
    let decoded = delta_decode(&st)?;
    debug_assert_eq!(decoded, st.reconstruction);
    let bit = |up: bool| if up { '1' } else { '0' };
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Dm<'a> {
                spec: &'a HarmonicSpec64,
                samples: usize,
                sample_rate: f64,
                step: f64,
                bits: String,
                reconstruction: &'a [f64],
                bit_rate: f64,
            }
            json(&Dm {
                spec: &conv.spec,
                samples: conv.samples,
                sample_rate: s.sample_rate,
                step,
                bits: st.bits.iter().map(|&b| bit(b)).collect(),
                reconstruction: &decoded,
                bit_rate: st.bit_rate,
            })
        }
        Format::Csv => {
            let mut out = String::from("t,x,bit,y_hat,e\n");
            for (((t, x), &up), y) in s.instants.iter().zip(&s.values).zip(&st.bits).zip(&decoded)
            {
                let _ = writeln!(out, "{t},{x},{},{y},{}", bit(up), x - y);
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            spec_lines(&mut out, &conv.spec);
            let _ = writeln!(
                out,
                "delta modulation: step = {step}, bit rate = {} bps (1 bit per sample)",
                st.bit_rate
            );
            let _ = writeln!(
                out,
                "{:>6} {:>14} {:>12} {:>4} {:>12} {:>12}",
                "n", "t", "x", "bit", "y_hat", "e"
            );
            for (n, (((t, x), &up), y)) in s
                .instants
                .iter()
                .zip(&s.values)
                .zip(&st.bits)
                .zip(&decoded)
                .enumerate()
            {
                let _ = writeln!(
                    out,
                    "{n:>6} {t:>14.6e} {x:>12.6} {:>4} {y:>12.6} {:>12.6}",
                    bit(up),
                    x - y
                );
            }
            out
        }
    })
}
