use pcmbench_core::pcm::{
    default_range, encode, make_quantizer, metrics, nyquist_check, quantize, reconstruct, sample,
};
use pcmbench_core::session::{Artifacts, Direction, Session, SessionId, Stage};
use pcmbench_core::{HarmonicSpec, Preset, Real};

fn run<T: Real>(preset: Preset, n: usize, bits: u8) -> Artifacts<T> {
    Artifacts::compute(&preset.spec::<T>(), n, bits).unwrap()
}

#[test]
fn single_and_double_precision_agree() {
    for preset in Preset::ALL {
        let lo = run::<f32>(preset, 64, 6);
        let hi = run::<f64>(preset, 64, 6);
        for (k, (a, b)) in lo.quantized.levels.iter().zip(&hi.quantized.levels).enumerate() {
            if a == b {
                continue;
            }
            // a flip is only allowed where the sample sits on an interval edge within f32 rounding
            assert_eq!(a.abs_diff(*b), 1, "{preset} sample {k}");
            let x = hi.sampled.values[k];
            let edge = hi.quantizer.edge((*a).min(*b));
            assert!((x - edge).abs() < 1e-6, "{preset} sample {k}: {x} vs edge {edge}");
        }
        for (a, b) in lo.sampled.values.iter().zip(&hi.sampled.values) {
            assert!((f64::from(*a) - b).abs() < 1e-5);
        }
        assert_eq!(f64::from(lo.coded.bit_rate), hi.coded.bit_rate);
    }
}

#[test]
fn every_preset_converts_without_clipping() {
    for preset in Preset::ALL {
        let spec: HarmonicSpec<f64> = preset.spec();
        let a = run::<f64>(preset, 200, 8);
        assert_eq!(a.quantized.clipped_count(), 0, "{preset}");
        let (lo, hi) = default_range(&spec);
        assert_eq!((a.quantizer.range_lo, a.quantizer.range_hi), (lo, hi));
        assert!(a.metrics.max_abs_error <= a.quantizer.step / 2.0 + 1e-12);
        assert!(nyquist_check(&spec, a.sampled.sample_rate).satisfied);
    }
}

#[test]
fn manual_pipeline_matches_session() {
    let spec: HarmonicSpec<f64> = Preset::Rectangular.spec();
    let s = sample(&spec, 80).unwrap();
    let (lo, hi) = default_range(&spec);
    let q = make_quantizer(5, lo, hi).unwrap();
    let qs = quantize(&s, &q);
    let cs = encode(&qs, &q, s.sample_rate).unwrap();
    let m = metrics(&s, &qs, &cs).unwrap();

    let mut session = Session::create(SessionId::new(7), spec, 80, 5).unwrap();
    assert_eq!(session.artifacts().coded, cs);
    assert_eq!(session.artifacts().metrics, m);
    assert_eq!(cs.decode_levels().unwrap(), qs.levels);
    session.step(Direction::Forward);
    session.step(Direction::Forward);
    assert_eq!(session.stage(), Stage::Quantized);
}

#[test]
fn undersampling_aliases() {
    let mut a = [0.0; 6];
    a[5] = 1.0;
    let spec = HarmonicSpec::new(a, [0.0; 6], 2.0, 0, 0.0, 5).unwrap();
    let limit = nyquist_check(&spec, 1.0).limit;
    assert_eq!(limit, 24.0);
    let err_at = |n: usize| {
        let s = sample(&spec, n).unwrap();
        let w = spec.window();
        let at: Vec<f64> = (0..500).map(|k| w * (0.25 + 0.5 * (k as f64 + 0.3) / 500.0)).collect();
        let rate = s.sample_rate;
        let err = reconstruct(&s, &at)
            .iter()
            .zip(&at)
            .map(|(v, &t)| (v - spec.eval(t)).abs())
            .fold(0.0, f64::max);
        (rate, err)
    };
    // window is 2.5 s: 240 samples -> 96 Hz (4x), 50 samples -> 20 Hz (below the limit)
    let (fast_rate, fast) = err_at(240);
    let (slow_rate, slow) = err_at(50);
    assert_eq!(fast_rate, 96.0);
    assert!(!nyquist_check(&spec, slow_rate).satisfied);
    assert!(fast <= 0.05, "{fast}");
    assert!(slow > 10.0 * fast, "{slow} vs {fast}");
}
