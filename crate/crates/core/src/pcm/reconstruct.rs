use crate::pcm::sampling::SampledSignal;
use crate::scalar::Real;

/// Normalized sinc, `sin(pi u) / (pi u)` with `sinc(0) = 1`.
pub fn sinc<T: Real>(u: T) -> T {
    if u == T::zero() {
        T::one()
    } else {
        let x = T::PI() * u;
        x.sin() / x
    }
}

/// Band-limited interpolation `v(t) = sum_n x[n] sinc((t - nT) / T)` over
/// the finite sample set, no tapering. Accurate away from the window edges.
pub fn reconstruct<T: Real>(s: &SampledSignal<T>, at: &[T]) -> Vec<T> {
    at.iter()
        .map(|&t| {
            let u = t / s.period_t;
            s.values
                .iter()
                .enumerate()
                .fold(T::zero(), |acc, (n, &x)| acc + x * sinc(u - T::from_count(n)))
        })
        .collect()
}
