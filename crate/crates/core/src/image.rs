//! Real-valued RGB image buffer.

use crate::error::{Error, Result};
use crate::real::Real;

/// An `height x width` RGB image with channel values in `[0, 1]`,
/// stored row-major with interleaved channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageBuffer<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Real> ImageBuffer<T> {
    /// Wrap an interleaved RGB buffer, validating shape and value range.
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self> {
        let expected = checked_len(width, height)?;
        if data.len() != expected {
            return Err(Error::ValueCountMismatch {
                expected,
                got: data.len(),
            });
        }
        if !data.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        if !data
            .iter()
            .all(|&v| v >= T::zero() && v <= T::one())
        {
            return Err(Error::PixelOutOfRange);
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Build an image pixel-by-pixel from a closure returning `[r, g, b]`.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [T; 3],
    ) -> Result<Self> {
        let len = checked_len(width, height)?;
        let mut data = Vec::with_capacity(len);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    /// Constant-color image.
    pub fn filled(width: usize, height: usize, rgb: [T; 3]) -> Result<Self> {
        Self::from_fn(width, height, |_, _| rgb)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Interleaved RGB channel data, row-major.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> [T; 3] {
        debug_assert!(x < self.width && y < self.height);
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }
}

fn checked_len(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimension);
    }
    width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or(Error::DimensionOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(
            ImageBuffer::<f32>::new(0, 4, vec![]),
            Err(Error::ZeroDimension)
        ));
        assert!(matches!(
            ImageBuffer::new(2, 2, vec![0.0f32; 11]),
            Err(Error::ValueCountMismatch { .. })
        ));
        assert!(matches!(
            ImageBuffer::new(1, 1, vec![0.5f32, f32::NAN, 0.0]),
            Err(Error::NonFiniteValue)
        ));
        assert!(matches!(
            ImageBuffer::new(1, 1, vec![0.5f32, 1.5, 0.0]),
            Err(Error::PixelOutOfRange)
        ));
    }

    #[test]
    fn pixel_addressing_is_row_major() {
        let img = ImageBuffer::from_fn(3, 2, |x, y| {
            let v = (y * 3 + x) as f64 / 10.0;
            [v, v, v]
        })
        .unwrap();
        assert_eq!(img.pixel(0, 0), [0.0; 3]);
        assert_eq!(img.pixel(2, 1), [0.5; 3]);
    }
}
