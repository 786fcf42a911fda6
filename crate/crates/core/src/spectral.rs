//! Spectral validation of synthesized fields: radially averaged power
//! spectra and power-law slope fitting.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fft::{fft2d_in_place, lattice_frequency};
use crate::grf::ScalarField;
use crate::real::{real, Real};

/// Radially averaged power spectrum of one field (or an ensemble mean).
///
/// `k_bins` holds per-annulus mean frequency magnitudes (strictly
/// increasing, all positive); `power` the mean squared spectral magnitude
/// per annulus, normalized by the pixel count.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate<T> {
    k_bins: Vec<T>,
    power: Vec<T>,
    fitted_slope: Option<T>,
    fit_range: Option<(T, T)>,
}

impl<T: Real> SpectrumEstimate<T> {
    /// Wrap bin centers and powers, validating the estimate invariants.
    pub fn new(k_bins: Vec<T>, power: Vec<T>) -> Result<Self> {
        if k_bins.len() != power.len() {
            return Err(Error::ValueCountMismatch {
                expected: k_bins.len(),
                got: power.len(),
            });
        }
        if k_bins.len() < 2 {
            return Err(Error::InsufficientFitData);
        }
        if !k_bins.windows(2).all(|w| w[0] < w[1]) || k_bins[0] <= T::zero() {
            return Err(Error::InvalidConfig(
                "spectral bin centers must be positive and strictly increasing".into(),
            ));
        }
        if power.iter().any(|&p| !p.is_finite() || p < T::zero()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(Self {
            k_bins,
            power,
            fitted_slope: None,
            fit_range: None,
        })
    }

    pub fn k_bins(&self) -> &[T] {
        &self.k_bins
    }

    pub fn power(&self) -> &[T] {
        &self.power
    }

    pub fn fitted_slope(&self) -> Option<T> {
        self.fitted_slope
    }

    pub fn fit_range(&self) -> Option<(T, T)> {
        self.fit_range
    }

    /// Default fit window: skip the lowest annulus (few modes, high
    /// variance) and the top 20% of frequencies.
    pub fn default_fit_range(&self) -> (T, T) {
        let k_max = *self.k_bins.last().expect("estimate has bins");
        (self.k_bins[1], real::<T>(0.8) * k_max)
    }

    /// Return the estimate with `fitted_slope`/`fit_range` filled in.
    pub fn with_fit(mut self, range: (T, T)) -> Result<Self> {
        let slope = fit_power_law(&self, range)?;
        self.fitted_slope = Some(slope);
        self.fit_range = Some(range);
        Ok(self)
    }
}

/// Radially averaged power spectrum of `field` over `n_bins` linear
/// annuli covering `(0, min(width, height) / 2]`.
///
/// The DC mode is excluded; modes beyond the shorter axis' Nyquist ring
/// are ignored (incomplete angular coverage). Empty annuli are dropped.
pub fn radial_power_spectrum<T: Real>(
    field: &ScalarField<T>,
    n_bins: usize,
) -> Result<SpectrumEstimate<T>> {
    let (w, h) = field.dimensions();
    if w < 4 || h < 4 {
        return Err(Error::FieldTooSmall {
            width: w,
            height: h,
        });
    }
    let k_max = (w.min(h) / 2) as f64;
    let available = k_max as usize;
    if n_bins < 2 || n_bins > available {
        return Err(Error::BinCount {
            requested: n_bins,
            available,
        });
    }

    let mut buf: Vec<Complex<T>> = field
        .values()
        .iter()
        .map(|&v| Complex::new(v, T::zero()))
        .collect();
    fft2d_in_place(&mut buf, w, h, false);

    let norm = 1.0 / (w * h) as f64;
    let bin_width = k_max / n_bins as f64;
    let mut power_sum = vec![0.0f64; n_bins];
    let mut k_sum = vec![0.0f64; n_bins];
    let mut counts = vec![0usize; n_bins];

    for iy in 0..h {
        let ky = lattice_frequency(iy, h);
        for ix in 0..w {
            let kx = lattice_frequency(ix, w);
            let k = (kx * kx + ky * ky).sqrt();
            if k == 0.0 || k > k_max {
                continue;
            }
            // Right-closed annuli: bin i covers (i*bw, (i+1)*bw].
            let bin = ((k / bin_width).ceil() as usize).saturating_sub(1).min(n_bins - 1);
            let c = buf[iy * w + ix];
            let magnitude_sq =
                c.re.to_f64().unwrap_or(f64::NAN).powi(2) + c.im.to_f64().unwrap_or(f64::NAN).powi(2);
            power_sum[bin] += magnitude_sq * norm;
            k_sum[bin] += k;
            counts[bin] += 1;
        }
    }

    let mut k_bins = Vec::with_capacity(n_bins);
    let mut power = Vec::with_capacity(n_bins);
    for i in 0..n_bins {
        if counts[i] == 0 {
            continue;
        }
        k_bins.push(real::<T>(k_sum[i] / counts[i] as f64));
        power.push(real::<T>(power_sum[i] / counts[i] as f64));
    }
    SpectrumEstimate::new(k_bins, power)
}

/// Least-squares slope of `log(power)` against `log(k)` over the bins
/// inside `[range.0, range.1]` with positive power.
///
/// For fields synthesized with exponent `gamma` the expected slope is
/// `-gamma`.
pub fn fit_power_law<T: Real>(estimate: &SpectrumEstimate<T>, range: (T, T)) -> Result<T> {
    let mut points = Vec::new();
    let mut in_range = 0usize;
    for (&k, &p) in estimate.k_bins().iter().zip(estimate.power()) {
        if k < range.0 || k > range.1 {
            continue;
        }
        in_range += 1;
        if p > T::zero() {
            points.push((
                k.to_f64().expect("finite bin center").ln(),
                p.to_f64().expect("finite bin power").ln(),
            ));
        }
    }
    if in_range > 0 && points.is_empty() {
        return Err(Error::ZeroPowerInRange);
    }
    if points.len() < 2 {
        return Err(Error::InsufficientFitData);
    }

    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in &points {
        cov += (x - mean_x) * (y - mean_y);
        var += (x - mean_x) * (x - mean_x);
    }
    if var == 0.0 {
        return Err(Error::InsufficientFitData);
    }
    Ok(real::<T>(cov / var))
}

/// Average several spectra bin-by-bin (e.g. over a seed ensemble).
///
/// All estimates must come from identically sized fields binned the same
/// way, so their `k_bins` match exactly.
pub fn average_power_spectra<T: Real>(
    estimates: &[SpectrumEstimate<T>],
) -> Result<SpectrumEstimate<T>> {
    let first = estimates.first().ok_or(Error::InsufficientFitData)?;
    let mut power: Vec<f64> = vec![0.0; first.power().len()];
    for est in estimates {
        if est.k_bins() != first.k_bins() {
            return Err(Error::MismatchedSpectra);
        }
        for (acc, &p) in power.iter_mut().zip(est.power()) {
            *acc += p.to_f64().expect("finite power");
        }
    }
    let n = estimates.len() as f64;
    SpectrumEstimate::new(
        first.k_bins().to_vec(),
        power.into_iter().map(|p| real::<T>(p / n)).collect(),
    )
}
