//! Gaussian random field synthesis with a power-law spectrum.
//!
//! Fields are realized in the frequency domain: complex Gaussian white
//! noise is shaped by `sqrt(P(k))` with `P(k) = k^(-gamma)` on the integer
//! frequency lattice, inverse-transformed, and rescaled so the largest
//! magnitude equals the amplitude bound `alpha` exactly. The DC mode is
//! suppressed (`P(0) = 0`), which makes every synthesized field zero-mean.
//!
//! Determinism contract: white noise is drawn from a `ChaCha8` stream
//! seeded with the spec's 64-bit seed, one Box-Muller normal per grid
//! sample in row-major order, always in `f64` before conversion to the
//! field scalar. The same spec therefore reproduces the same field
//! bit-for-bit on any platform.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fft::{fft2d_in_place, lattice_frequency};
use crate::real::{real, Real};
use crate::rng::fill_standard_normal;

/// Parameters of one field realization.
///
/// `gamma` is the power-law exponent (larger means smoother), `alpha` the
/// amplitude bound: every value of the realized field lies in
/// `[-alpha, alpha]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec<T> {
    pub width: usize,
    pub height: usize,
    pub gamma: T,
    pub alpha: T,
    pub seed: u64,
}

impl<T: Real> FieldSpec<T> {
    pub fn new(width: usize, height: usize, gamma: T, alpha: T, seed: u64) -> Self {
        Self {
            width,
            height,
            gamma,
            alpha,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::ZeroDimension);
        }
        self.width
            .checked_mul(self.height)
            .ok_or(Error::DimensionOverflow)?;
        for (name, value) in [("gamma", self.gamma), ("alpha", self.alpha)] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter { name });
            }
            if value < T::zero() {
                return Err(Error::NegativeParameter { name });
            }
        }
        Ok(())
    }
}

/// One realized field: a row-major grid of values plus the spec that
/// produced (or bounds) it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField<T> {
    spec: FieldSpec<T>,
    values: Vec<T>,
}

impl<T: Real> ScalarField<T> {
    /// Wrap existing values under a spec, validating the length, the
    /// finiteness of every entry, and the amplitude bound.
    pub fn new(spec: FieldSpec<T>, values: Vec<T>) -> Result<Self> {
        spec.validate()?;
        let expected = spec.width * spec.height;
        if values.len() != expected {
            return Err(Error::ValueCountMismatch {
                expected,
                got: values.len(),
            });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        if values.iter().any(|v| v.abs() > spec.alpha) {
            return Err(Error::FieldBoundExceeded);
        }
        Ok(Self { spec, values })
    }

    /// Wrap raw values, deriving the amplitude bound from the data.
    pub fn from_values(width: usize, height: usize, values: Vec<T>) -> Result<Self> {
        let alpha = values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()));
        if !alpha.is_finite() {
            return Err(Error::NonFiniteValue);
        }
        Self::new(
            FieldSpec::new(width, height, T::zero(), alpha, 0),
            values,
        )
    }

    /// Constant field (degenerate but valid; used to express global
    /// transforms as a special case of local ones).
    pub fn constant(width: usize, height: usize, value: T) -> Result<Self> {
        let len = width
            .checked_mul(height)
            .ok_or(Error::DimensionOverflow)?;
        Self::new(
            FieldSpec::new(width, height, T::zero(), value.abs(), 0),
            vec![value; len],
        )
    }

    pub fn width(&self) -> usize {
        self.spec.width
    }

    pub fn height(&self) -> usize {
        self.spec.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.spec.width, self.spec.height)
    }

    pub fn spec(&self) -> &FieldSpec<T> {
        &self.spec
    }

    /// Row-major values.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, x: usize, y: usize) -> T {
        debug_assert!(x < self.spec.width && y < self.spec.height);
        self.values[y * self.spec.width + x]
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn sum(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, &v| acc + v)
    }
}

/// Power-law spectrum `P(k) = k^(-gamma)`, with the DC mode suppressed:
/// `P(0) = 0`.
///
/// `k` is measured in cycles per grid (integer lattice frequencies), so
/// `k = 1` is the fundamental regardless of grid size.
pub fn power_spectrum<T: Real>(k: T, gamma: T) -> T {
    debug_assert!(k >= T::zero() && gamma >= T::zero());
    if k > T::zero() {
        k.powf(-gamma)
    } else {
        T::zero()
    }
}

/// Synthesize one field realization from its spec.
///
/// Pure function of the spec: identical specs give bit-identical grids.
/// For `alpha > 0` and more than one grid cell the maximum magnitude
/// equals `alpha` exactly (values are scaled as `v / max * alpha`, and the
/// extremal ratio is exactly `±1`).
pub fn synthesize_field<T: Real>(spec: &FieldSpec<T>) -> Result<ScalarField<T>> {
    spec.validate()?;
    let (w, h) = (spec.width, spec.height);
    let n = w * h;

    if spec.alpha == T::zero() || n == 1 {
        // A 1x1 grid only has the (suppressed) DC mode.
        return ScalarField::new(*spec, vec![T::zero(); n]);
    }

    let mut noise = vec![0.0f64; n];
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    fill_standard_normal(&mut rng, &mut noise);

    // Real white noise forward-transformed is Hermitian complex Gaussian
    // noise, so the shaped spectrum inverts to a real field.
    let mut buf: Vec<Complex<T>> = noise
        .iter()
        .map(|&v| Complex::new(real::<T>(v), T::zero()))
        .collect();
    fft2d_in_place(&mut buf, w, h, false);

    for iy in 0..h {
        let ky = lattice_frequency(iy, h);
        for ix in 0..w {
            let kx = lattice_frequency(ix, w);
            let k = real::<T>((kx * kx + ky * ky).sqrt());
            let amplitude = power_spectrum(k, spec.gamma).sqrt();
            buf[iy * w + ix] = buf[iy * w + ix] * amplitude;
        }
    }

    fft2d_in_place(&mut buf, w, h, true);

    let raw: Vec<T> = buf.iter().map(|c| c.re).collect();
    let max = raw.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let values = if max == T::zero() {
        vec![T::zero(); n]
    } else {
        raw.iter().map(|&v| v / max * spec.alpha).collect()
    };
    ScalarField::new(*spec, values)
}
