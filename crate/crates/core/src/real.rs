//! Scalar abstraction: every numeric routine in the crate is generic over
//! `f32`/`f64` through [`Real`].

use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Floating-point scalar usable for fields, images, and spectra.
///
/// `FftNum` brings `Send + Sync + 'static` and `FromPrimitive`, so a bound
/// on `Real` is enough for FFTs, rayon, and `f64` constant conversion.
pub trait Real: Float + FloatConst + FftNum {}

impl<T: Float + FloatConst + FftNum> Real for T {}

/// Convert an `f64` constant into `T`.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant converts to the scalar type")
}

/// Clamp into the unit interval.
pub(crate) fn clamp01<T: Real>(x: T) -> T {
    x.max(T::zero()).min(T::one())
}
