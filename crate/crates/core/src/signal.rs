//! Analog source: a periodic signal built from a DC offset and the first six
//! harmonics of a fundamental.
//!
//! ```text
//! x(t) = u_dc + sum_{i=1..6} a_i sin(2 pi i f1 t) + b_i cos(2 pi i f1 t)
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of harmonics carried by a [`HarmonicSpec`].
pub const HARMONICS: usize = 6;

/// Default resolution of [`HarmonicSpec::render`] when the caller has no preference.
pub const DEFAULT_RENDER_POINTS: usize = 512;

/// Coefficients of the analog signal plus its display window.
///
/// `a[i - 1]` / `b[i - 1]` are the sine / cosine amplitudes of harmonic `i`.
/// The fundamental is entered as mantissa and decimal exponent and collapsed
/// to one frequency in Hz on construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicSpec<T> {
    a: [T; HARMONICS],
    b: [T; HARMONICS],
    f1_mantissa: T,
    f1_exponent: i32,
    #[serde(rename = "f1_hz")]
    f1: T,
    u_dc: T,
    periods: u32,
}

impl<T: Real> HarmonicSpec<T> {
    pub fn new(
        a: [T; HARMONICS],
        b: [T; HARMONICS],
        f1_mantissa: T,
        f1_exponent: i32,
        u_dc: T,
        periods: u32,
    ) -> Result<Self> {
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("a", "sine amplitudes must be finite"));
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("b", "cosine amplitudes must be finite"));
        }
        if !u_dc.is_finite() {
            return Err(Error::invalid("dc", "DC component must be finite"));
        }
        if !(f1_mantissa.is_finite() && f1_mantissa > T::zero()) {
            return Err(Error::invalid(
                "f1_mantissa",
                "fundamental mantissa must be positive",
            ));
        }
        let f1 = f1_mantissa * T::lit(10.0).powi(f1_exponent);
        if !(f1.is_finite() && f1 > T::zero()) {
            return Err(Error::invalid(
                "f1_exponent",
                "fundamental frequency must be finite and positive",
            ));
        }
        if periods < 1 {
            return Err(Error::invalid("periods", "at least 1 period is required"));
        }
        Ok(HarmonicSpec {
            a,
            b,
            f1_mantissa,
            f1_exponent,
            f1,
            u_dc,
            periods,
        })
    }

    /// Constant signal `u_dc` with no harmonics.
    pub fn dc(u_dc: T, f1: T, periods: u32) -> Result<Self> {
        Self::new(
            [T::zero(); HARMONICS],
            [T::zero(); HARMONICS],
            f1,
            0,
            u_dc,
            periods,
        )
    }

    pub fn sine_amplitudes(&self) -> &[T; HARMONICS] {
        &self.a
    }

    pub fn cosine_amplitudes(&self) -> &[T; HARMONICS] {
        &self.b
    }

    pub fn f1_mantissa(&self) -> T {
        self.f1_mantissa
    }

    pub fn f1_exponent(&self) -> i32 {
        self.f1_exponent
    }

    /// Fundamental frequency in Hz.
    pub fn fundamental(&self) -> T {
        self.f1
    }

    pub fn dc_offset(&self) -> T {
        self.u_dc
    }

    pub fn periods(&self) -> u32 {
        self.periods
    }

    /// Signal value at time `t` (seconds).
    pub fn eval(&self, t: T) -> T {
        let phase = T::two() * T::PI() * self.f1 * t;
        let mut acc = self.u_dc;
        for (i, (&a, &b)) in self.a.iter().zip(self.b.iter()).enumerate() {
            let arg = T::from_count(i + 1) * phase;
            acc = acc + a * arg.sin() + b * arg.cos();
        }
        acc
    }

    /// Length of the display window, `periods / f1` seconds.
    pub fn window(&self) -> T {
        T::from_u32(self.periods).expect("period count representable") / self.f1
    }

    /// Analytic bound on `|x(t)|`: `|u_dc| + sum(|a_i| + |b_i|)`.
    pub fn peak_bound(&self) -> T {
        self.u_dc.abs() + self.harmonic_peak()
    }

    /// Bound on `|x(t) - u_dc|`.
    pub fn harmonic_peak(&self) -> T {
        self.a
            .iter()
            .chain(self.b.iter())
            .fold(T::zero(), |acc, v| acc + v.abs())
    }

    /// Highest harmonic index (1..=6) with a nonzero coefficient, `None` for a DC-only signal.
    pub fn highest_harmonic(&self) -> Option<usize> {
        (0..HARMONICS)
            .rev()
            .find(|&i| self.a[i] != T::zero() || self.b[i] != T::zero())
            .map(|i| i + 1)
    }

    /// Evaluate on `points` uniform instants spanning `[0, window]`, both ends included.
    pub fn render(&self, points: usize) -> Result<RenderedCurve<T>> {
        if points < 2 {
            return Err(Error::invalid("points", "at least 2 render points are required"));
        }
        let window = self.window();
        let last = points - 1;
        let dt = window / T::from_count(last);
        let t: Vec<T> = (0..points)
            .map(|k| if k == last { window } else { T::from_count(k) * dt })
            .collect();
        let v = t.iter().map(|&ti| self.eval(ti)).collect();
        Ok(RenderedCurve { t, v })
    }
}

/// Dense, plot-ready trace of the analog signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderedCurve<T> {
    pub t: Vec<T>,
    pub v: Vec<T>,
}

impl<T> RenderedCurve<T> {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// Built-in example signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Pure fundamental over 2 periods.
    Sinusoid,
    /// Six-harmonic triangle truncation over 2 periods.
    Triangular,
    /// Six-harmonic square truncation over 4 periods.
    Rectangular,
    /// Arbitrary mixed-harmonic signal over 1 period.
    OnePeriod,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Sinusoid,
        Preset::Triangular,
        Preset::Rectangular,
        Preset::OnePeriod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sinusoid => "sinusoid",
            Preset::Triangular => "triangular",
            Preset::Rectangular => "rectangular",
            Preset::OnePeriod => "one-period",
        }
    }

    /// Coefficients for the preset, all with f1 = 1 kHz.
    ///
    /// Triangle: `8/pi^2 * (sin w - sin 3w / 9 + sin 5w / 25)`.
    /// Square: `4/pi * (sin w + sin 3w / 3 + sin 5w / 5)`.
    /// One-period is a fixed mix of our own choosing with every kind of term
    /// present (DC, sines, cosines, up to the 6th harmonic).
    pub fn spec<T: Real>(self) -> HarmonicSpec<T> {
        let z = T::zero();
        let pi = T::PI();
        let (a, b, u_dc, periods) = match self {
            Preset::Sinusoid => ([T::one(), z, z, z, z, z], [z; HARMONICS], z, 2),
            Preset::Triangular => {
                let k = T::lit(8.0) / (pi * pi);
                (
                    [k, z, -k / T::lit(9.0), z, k / T::lit(25.0), z],
                    [z; HARMONICS],
                    z,
                    2,
                )
            }
            Preset::Rectangular => {
                let k = T::lit(4.0) / pi;
                (
                    [k, z, k / T::lit(3.0), z, k / T::lit(5.0), z],
                    [z; HARMONICS],
                    z,
                    4,
                )
            }
            Preset::OnePeriod => (
                [T::one(), T::lit(0.5), z, T::lit(0.25), z, z],
                [z, T::lit(0.3), T::lit(0.2), z, z, T::lit(0.1)],
                T::lit(0.2),
                1,
            ),
        };
        HarmonicSpec::new(a, b, T::one(), 3, u_dc, periods).expect("preset coefficients are valid")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_owned()))
    }
}

/// Look up a preset by name.
pub fn preset<T: Real>(name: &str) -> Result<HarmonicSpec<T>> {
    name.parse::<Preset>().map(Preset::spec)
}
