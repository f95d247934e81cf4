use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::api::{self, Cors};
use crate::inputs::{
    validate_bits, ConversionInputs, SignalInputs, DEFAULT_BITS, DEFAULT_SAMPLES,
};
use crate::report::{self, Format};

const RATE_HELP: &str = "\
Bit rate: RT = f * log2(k) bps, where f is the sample rate in Hz and k the
number of quantization levels (k = 2^bits). For example 8000 Hz at 8 bits
(256 levels) needs 64000 bps, i.e. 8000 bytes per second.";

#[derive(Debug, Parser)]
#[command(name = "pcmbench", version, about = "PCM conversion workbench", after_help = RATE_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render the analog signal on a dense time grid.
    Synth {
        #[command(flatten)]
        signal: SignalArgs,
        /// Points across the display window.
        #[arg(long, default_value_t = 512, allow_negative_numbers = true)]
        points: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample, quantize and encode; one row per sample.
    #[command(after_help = RATE_HELP)]
    Convert {
        #[command(flatten)]
        conversion: ConversionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Differential PCM with a first-order closed-loop predictor.
    Dpcm {
        #[command(flatten)]
        conversion: ConversionArgs,
        /// Bits per difference word.
        #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
        diff_bits: i64,
        /// Half-width D of the difference quantizer range [-D, D] (default: PCM range / 4).
        #[arg(long, allow_negative_numbers = true)]
        diff_range: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Delta modulation, one bit per sample.
    Dm {
        #[command(flatten)]
        conversion: ConversionArgs,
        /// Tracker step (default: twice the PCM quantizer step).
        #[arg(long, allow_negative_numbers = true)]
        step: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Serve the session HTTP API.
    Serve {
        #[arg(long, env = "PCMBENCH_ADDR", default_value = "127.0.0.1:8080")]
        addr: String,
        /// Restrict cross-origin access to these origins (repeatable). Open by default.
        #[arg(long = "allow-origin", env = "PCMBENCH_ALLOW_ORIGIN", value_delimiter = ',')]
        allow_origin: Vec<String>,
    },
}

/// Signal definition: a preset or explicit coefficients.
#[derive(Debug, Clone, Default, Args)]
pub struct SignalArgs {
    /// sinusoid, triangular, rectangular or one-period.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a4: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a5: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a6: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b4: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b5: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b6: Option<f64>,
    /// Fundamental frequency mantissa (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub f1_mantissa: Option<f64>,
    /// Fundamental frequency decimal exponent (default 3, i.e. 1 kHz).
    #[arg(long = "f1-exp", allow_negative_numbers = true)]
    pub f1_exponent: Option<i32>,
    /// DC component.
    #[arg(long, allow_negative_numbers = true)]
    pub dc: Option<f64>,
    /// Fundamental periods in the display window (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub periods: Option<i64>,
}

fn collect(values: [Option<f64>; 6]) -> Option<[f64; 6]> {
    values
        .iter()
        .any(Option::is_some)
        .then(|| values.map(|v| v.unwrap_or(0.0)))
}

impl SignalArgs {
    pub fn to_inputs(&self) -> SignalInputs {
        SignalInputs {
            preset: self.preset.clone(),
            a: collect([self.a1, self.a2, self.a3, self.a4, self.a5, self.a6]),
            b: collect([self.b1, self.b2, self.b3, self.b4, self.b5, self.b6]),
            f1_mantissa: self.f1_mantissa,
            f1_exponent: self.f1_exponent,
            dc: self.dc,
            periods: self.periods,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConversionArgs {
    #[command(flatten)]
    pub signal: SignalArgs,
    /// Number of samples over the display window.
    #[arg(long, default_value_t = DEFAULT_SAMPLES, allow_negative_numbers = true)]
    pub samples: i64,
    /// Quantizer bit depth (1 to 16).
    #[arg(long, default_value_t = DEFAULT_BITS, allow_negative_numbers = true)]
    pub bits: i64,
    /// Lower quantizer bound (default: minus the analytic signal peak).
    #[arg(long, allow_negative_numbers = true, requires = "range_hi")]
    pub range_lo: Option<f64>,
    /// Upper quantizer bound (default: the analytic signal peak).
    #[arg(long, allow_negative_numbers = true, requires = "range_lo")]
    pub range_hi: Option<f64>,
}

impl ConversionArgs {
    pub fn to_inputs(&self) -> ConversionInputs {
        ConversionInputs {
            samples: self.samples,
            bits: self.bits,
            range_lo: self.range_lo,
            range_hi: self.range_hi,
            ..ConversionInputs::with_signal(self.signal.to_inputs())
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{code}: {source}", code = .source.code())]
    Input {
        #[from]
        source: pcmbench_core::Error,
    },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Produce the report for a batch subcommand. `serve` yields `None`.
pub fn render(command: &Command) -> Result<Option<(String, &OutputArgs)>, CliError> {
    let report = match command {
        Command::Synth {
            signal,
            points,
            output,
        } => {
            let spec = signal.to_inputs().to_spec()?;
            let points = usize::try_from(*points).unwrap_or(0);
            (report::synth(&spec, points, output.format)?, output)
        }
        Command::Convert { conversion, output } => {
            let conv = conversion.to_inputs().validate()?;
            (report::convert(&conv, output.format)?, output)
        }
        Command::Dpcm {
            conversion,
            diff_bits,
            diff_range,
            output,
        } => {
            let conv = conversion.to_inputs().validate()?;
            let diff_bits = validate_bits("diff_bits", *diff_bits)?;
            (report::dpcm(&conv, diff_bits, *diff_range, output.format)?, output)
        }
        Command::Dm {
            conversion,
            step,
            output,
        } => {
            let conv = conversion.to_inputs().validate()?;
            (report::dm(&conv, *step, output.format)?, output)
        }
        Command::Serve { .. } => return Ok(None),
    };
    Ok(Some(report))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    if let Command::Serve { addr, allow_origin } = &cli.command {
        let cors = if allow_origin.is_empty() {
            Cors::Open
        } else {
            Cors::Only(allow_origin.clone())
        };
        let rt = tokio::runtime::Runtime::new()?;
        return Ok(rt.block_on(api::serve(addr, cors))?);
    }
    if let Some((text, output)) = render(&cli.command)? {
        match &output.output {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
            }
        }
    }
    Ok(())
}
