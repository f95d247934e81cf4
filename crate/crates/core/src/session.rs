//! Step-through conversion session.
//!
//! A session holds one set of inputs and every stage artifact, computed once
//! at creation. The only mutable part is the stage cursor, which moves one
//! stage at a time between [`Stage::Analog`] and [`Stage::Encoded`].

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcm::{
    default_range, encode, make_quantizer, metrics, quantize, sample, CodedStream, Codeword,
    ConversionMetrics, QuantizedSignal, QuantizerConfig, SampledSignal,
};
use crate::scalar::Real;
use crate::signal::{HarmonicSpec, RenderedCurve, DEFAULT_RENDER_POINTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Stage {
    Analog = 0,
    Sampled = 1,
    Quantized = 2,
    Encoded = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Back,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::Analog, Stage::Sampled, Stage::Quantized, Stage::Encoded];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(index: u8) -> Option<Stage> {
        Stage::ALL.get(usize::from(index)).copied()
    }

    /// Neighbouring stage in `direction`, clamped at both ends.
    pub fn stepped(self, direction: Direction) -> Stage {
        let i = match direction {
            Direction::Forward => (self.index() + 1).min(Stage::Encoded.index()),
            Direction::Back => self.index().saturating_sub(1),
        };
        Stage::ALL[usize::from(i)]
    }

    pub fn name(self) -> &'static str {
        match self {
            Stage::Analog => "analog",
            Stage::Sampled => "sampled",
            Stage::Quantized => "quantized",
            Stage::Encoded => "encoded",
        }
    }
}

impl Serialize for Stage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "back" => Ok(Direction::Back),
            _ => Err(Error::invalid(
                "direction",
                format!("expected `forward` or `back`, got `{s}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SessionId(u64);

impl SessionId {
    pub fn new(raw: u64) -> Self {
        SessionId(raw)
    }
}

impl fmt::Display for SessionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for SessionId {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(SessionId)
    }
}

/// Everything computed for one conversion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifacts<T> {
    pub curve: RenderedCurve<T>,
    pub sampled: SampledSignal<T>,
    pub quantizer: QuantizerConfig<T>,
    pub quantized: QuantizedSignal<T>,
    pub coded: CodedStream<T>,
    pub metrics: ConversionMetrics<T>,
}

impl<T: Real> Artifacts<T> {
    /// Run the full pipeline with the quantizer on the default range.
    pub fn compute(spec: &HarmonicSpec<T>, n_samples: usize, bits: u8) -> Result<Self> {
        let (lo, hi) = default_range(spec);
        Self::compute_with_range(spec, n_samples, bits, lo, hi)
    }

    pub fn compute_with_range(
        spec: &HarmonicSpec<T>,
        n_samples: usize,
        bits: u8,
        lo: T,
        hi: T,
    ) -> Result<Self> {
        let sampled = sample(spec, n_samples)?;
        let quantizer = make_quantizer(bits, lo, hi)?;
        let curve = spec.render(DEFAULT_RENDER_POINTS)?;
        let quantized = quantize(&sampled, &quantizer);
        let coded = encode(&quantized, &quantizer, sampled.sample_rate)?;
        let metrics = metrics(&sampled, &quantized, &coded)?;
        Ok(Artifacts {
            curve,
            sampled,
            quantizer,
            quantized,
            coded,
            metrics,
        })
    }
}

/// What one stage screen shows.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StagePayload<'a, T> {
    Analog {
        curve: &'a RenderedCurve<T>,
    },
    Sampled {
        curve: &'a RenderedCurve<T>,
        sample_rate: T,
        period_t: T,
        instants: &'a [T],
        values: &'a [T],
    },
    Quantized {
        instants: &'a [T],
        samples: &'a [T],
        bits: u8,
        level_count: u32,
        step: T,
        range_lo: T,
        range_hi: T,
        /// One horizontal grid line per reconstruction level.
        grid: Vec<T>,
        levels: &'a [u32],
        values: &'a [T],
        errors: &'a [T],
        clipped: &'a [bool],
    },
    Encoded {
        bits_per_word: u8,
        codewords: &'a [Codeword],
        bit_rate: T,
        metrics: &'a ConversionMetrics<T>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session<T> {
    id: SessionId,
    spec: HarmonicSpec<T>,
    n_samples: usize,
    bits: u8,
    stage: Stage,
    artifacts: Arc<Artifacts<T>>,
}

impl<T: Real> Session<T> {
    /// New session at [`Stage::Analog`] with every artifact precomputed.
    pub fn create(id: SessionId, spec: HarmonicSpec<T>, n_samples: usize, bits: u8) -> Result<Self> {
        let artifacts = Arc::new(Artifacts::compute(&spec, n_samples, bits)?);
        Ok(Session {
            id,
            spec,
            n_samples,
            bits,
            stage: Stage::Analog,
            artifacts,
        })
    }

    pub fn id(&self) -> SessionId {
        self.id
    }

    pub fn spec(&self) -> &HarmonicSpec<T> {
        &self.spec
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn artifacts(&self) -> &Artifacts<T> {
        &self.artifacts
    }

    pub fn step(&mut self, direction: Direction) -> Stage {
        self.stage = self.stage.stepped(direction);
        self.stage
    }

    pub fn reset(&mut self) -> Stage {
        self.stage = Stage::Analog;
        self.stage
    }

    pub fn stage_payload(&self, stage: Stage) -> StagePayload<'_, T> {
        let a = &*self.artifacts;
        match stage {
            Stage::Analog => StagePayload::Analog { curve: &a.curve },
            Stage::Sampled => StagePayload::Sampled {
                curve: &a.curve,
                sample_rate: a.sampled.sample_rate,
                period_t: a.sampled.period_t,
                instants: &a.sampled.instants,
                values: &a.sampled.values,
            },
            Stage::Quantized => StagePayload::Quantized {
                instants: &a.sampled.instants,
                samples: &a.sampled.values,
                bits: a.quantizer.bits,
                level_count: a.quantizer.level_count,
                step: a.quantizer.step,
                range_lo: a.quantizer.range_lo,
                range_hi: a.quantizer.range_hi,
                grid: a.quantizer.levels(),
                levels: &a.quantized.levels,
                values: &a.quantized.values,
                errors: &a.quantized.errors,
                clipped: &a.quantized.clipped,
            },
            Stage::Encoded => StagePayload::Encoded {
                bits_per_word: a.coded.bits_per_word,
                codewords: &a.coded.codewords,
                bit_rate: a.coded.bit_rate,
                metrics: &a.metrics,
            },
        }
    }

    pub fn current_payload(&self) -> StagePayload<'_, T> {
        self.stage_payload(self.stage)
    }
}

/// Concurrent in-memory store of sessions. Ids are handed out sequentially
/// starting at 1; sessions live as long as the registry.
#[derive(Debug)]
pub struct SessionRegistry<T> {
    next_id: AtomicU64,
    sessions: RwLock<HashMap<SessionId, Arc<Mutex<Session<T>>>>>,
}

impl<T: Real> Default for SessionRegistry<T> {
    fn default() -> Self {
        SessionRegistry {
            next_id: AtomicU64::new(1),
            sessions: RwLock::new(HashMap::new()),
        }
    }
}

impl<T: Real> SessionRegistry<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create(&self, spec: HarmonicSpec<T>, n_samples: usize, bits: u8) -> Result<Session<T>> {
        // validate before consuming an id
        let mut session = Session::create(SessionId(0), spec, n_samples, bits)?;
        session.id = SessionId(self.next_id.fetch_add(1, Ordering::Relaxed));
        self.sessions
            .write()
            .expect("session registry poisoned")
            .insert(session.id, Arc::new(Mutex::new(session.clone())));
        Ok(session)
    }

    fn entry(&self, id: SessionId) -> Option<Arc<Mutex<Session<T>>>> {
        self.sessions
            .read()
            .expect("session registry poisoned")
            .get(&id)
            .cloned()
    }

    /// Snapshot of a session.
    pub fn get(&self, id: SessionId) -> Option<Session<T>> {
        self.entry(id)
            .map(|s| s.lock().expect("session poisoned").clone())
    }

    /// Apply `f` to the session under its lock and return the resulting snapshot.
    pub fn update<F>(&self, id: SessionId, f: F) -> Option<Session<T>>
    where
        F: FnOnce(&mut Session<T>),
    {
        self.entry(id).map(|s| {
            let mut guard = s.lock().expect("session poisoned");
            f(&mut guard);
            guard.clone()
        })
    }

    pub fn step(&self, id: SessionId, direction: Direction) -> Option<Session<T>> {
        self.update(id, |s| {
            s.step(direction);
        })
    }

    pub fn reset(&self, id: SessionId) -> Option<Session<T>> {
        self.update(id, |s| {
            s.reset();
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session registry poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
