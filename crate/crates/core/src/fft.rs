//! Minimal 2-D FFT on row-major complex buffers, wrapping rustfft.
//!
//! Transforms are unnormalized in both directions (rustfft convention);
//! callers that need absolute scales apply their own normalization.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::real::Real;

/// In-place 2-D FFT of a `width x height` row-major buffer.
pub(crate) fn fft2d_in_place<T: Real>(
    buf: &mut [Complex<T>],
    width: usize,
    height: usize,
    inverse: bool,
) {
    debug_assert_eq!(buf.len(), width * height);
    let mut planner = FftPlanner::new();

    // Row pass: the buffer is already a batch of `height` rows.
    let row_fft = if inverse {
        planner.plan_fft_inverse(width)
    } else {
        planner.plan_fft_forward(width)
    };
    row_fft.process(buf);

    // Column pass via transpose.
    let mut cols = vec![Complex::new(T::zero(), T::zero()); buf.len()];
    for y in 0..height {
        for x in 0..width {
            cols[x * height + y] = buf[y * width + x];
        }
    }
    let col_fft = if inverse {
        planner.plan_fft_inverse(height)
    } else {
        planner.plan_fft_forward(height)
    };
    col_fft.process(&mut cols);
    for y in 0..height {
        for x in 0..width {
            buf[y * width + x] = cols[x * height + y];
        }
    }
}

/// Signed integer lattice frequency for index `i` of an `n`-point axis:
/// `0, 1, ..., n/2, -(n-1)/2, ..., -1` in cycles per grid.
pub(crate) fn lattice_frequency(i: usize, n: usize) -> f64 {
    if i <= n / 2 {
        i as f64
    } else {
        i as f64 - n as f64
    }
}
