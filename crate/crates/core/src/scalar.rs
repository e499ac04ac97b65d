//! Floating-point scalar abstraction for the numerical paths.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// A real scalar usable for envelopes and float correlations: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + FftNum {}

impl<T: Float + FloatConst + FromPrimitive + FftNum> Real for T {}

pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 converts to any Real")
}

/// `exp(2 pi i k / n)` for `k = 0..n`, evaluated in `f64` and then narrowed.
pub fn unit_roots<T: Real>(n: u32) -> Vec<Complex<T>> {
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64;
            Complex::new(cast(theta.cos()), cast(theta.sin()))
        })
        .collect()
}
