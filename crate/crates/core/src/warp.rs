//! Per-pixel affine warps: building transform grids from random fields,
//! composing them, and applying them to images by backward mapping.
//!
//! Coordinate convention: each axis is normalized to `[-1, 1]` with the
//! origin at the image center (pixel 0 maps to -1, pixel `n-1` to +1), so
//! amplitude bounds are dimensionless and independent of image size. The
//! matrix stored at a pixel maps that *target* pixel's normalized
//! coordinates to the source location to sample, which covers the output
//! without holes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grf::ScalarField;
use crate::image::ImageBuffer;
use crate::real::{clamp01, real, Real};

/// Per-pixel 2x3 affine matrices `[m11, m12, m13, m21, m22, m23]`,
/// row-major over pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelAffineGrid<T> {
    width: usize,
    height: usize,
    matrices: Vec<[T; 6]>,
}

impl<T: Real> PixelAffineGrid<T> {
    /// Wrap per-pixel matrices, validating count and finiteness.
    pub fn from_matrices(width: usize, height: usize, matrices: Vec<[T; 6]>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ZeroDimension);
        }
        let expected = width
            .checked_mul(height)
            .ok_or(Error::DimensionOverflow)?;
        if matrices.len() != expected {
            return Err(Error::ValueCountMismatch {
                expected,
                got: matrices.len(),
            });
        }
        if let Some(i) = matrices
            .iter()
            .position(|m| m.iter().any(|v| !v.is_finite()))
        {
            return Err(Error::NonFiniteMatrix {
                x: i % width,
                y: i / width,
            });
        }
        Ok(Self {
            width,
            height,
            matrices,
        })
    }

    /// Grid of identity matrices.
    pub fn identity(width: usize, height: usize) -> Result<Self> {
        let one = T::one();
        let zero = T::zero();
        let len = width
            .checked_mul(height)
            .ok_or(Error::DimensionOverflow)?;
        Self::from_matrices(width, height, vec![[one, zero, zero, zero, one, zero]; len])
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

    pub fn matrices(&self) -> &[[T; 6]] {
        &self.matrices
    }

    pub fn matrix(&self, x: usize, y: usize) -> [T; 6] {
        debug_assert!(x < self.width && y < self.height);
        self.matrices[y * self.width + x]
    }
}

/// One local spatial transform and the field(s) that drive it.
///
/// `Rotate` consumes a single field (the local angle is `pi * g`); the
/// others consume independent per-axis fields.
#[derive(Debug, Clone)]
pub enum SpatialTransform<T> {
    Rotate { field: ScalarField<T> },
    Scale { field_x: ScalarField<T>, field_y: ScalarField<T> },
    Shear { field_x: ScalarField<T>, field_y: ScalarField<T> },
    Translate { field_x: ScalarField<T>, field_y: ScalarField<T> },
}

impl<T: Real> SpatialTransform<T> {
    fn fields(&self) -> (&ScalarField<T>, Option<&ScalarField<T>>) {
        match self {
            SpatialTransform::Rotate { field } => (field, None),
            SpatialTransform::Scale { field_x, field_y }
            | SpatialTransform::Shear { field_x, field_y }
            | SpatialTransform::Translate { field_x, field_y } => (field_x, Some(field_y)),
        }
    }
}

/// How `apply_pixel_affine` samples the source image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingPolicy {
    pub interpolation: Interpolation,
    pub padding: Padding,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        Self {
            interpolation: Interpolation::Bilinear,
            padding: Padding::EdgeClamp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    Bilinear,
    Nearest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Padding {
    EdgeClamp,
    ZeroFill,
}

/// Build the per-pixel affine grid for one transform.
///
/// Matrix layouts (g, gx, gy are the field values at the pixel):
/// rotate `[[cos pi*g, -sin pi*g, 0], [sin pi*g, cos pi*g, 0]]`,
/// scale `[[1+gx, 0, 0], [0, 1+gy, 0]]`,
/// shear `[[1, gx, 0], [gy, 1, 0]]`,
/// translate `[[1, 0, gx], [0, 1, gy]]`.
pub fn build_pixel_affine<T: Real>(transform: &SpatialTransform<T>) -> Result<PixelAffineGrid<T>> {
    let (first, second) = transform.fields();
    let (w, h) = first.dimensions();
    if let Some(other) = second {
        if other.dimensions() != (w, h) {
            return Err(Error::DimensionMismatch {
                expected_width: w,
                expected_height: h,
                width: other.width(),
                height: other.height(),
            });
        }
    }

    let zero = T::zero();
    let one = T::one();
    let len = w * h;
    let mut matrices = Vec::with_capacity(len);
    match transform {
        SpatialTransform::Rotate { field } => {
            for &g in field.values() {
                let (sin, cos) = (T::PI() * g).sin_cos();
                matrices.push([cos, -sin, zero, sin, cos, zero]);
            }
        }
        SpatialTransform::Scale { field_x, field_y } => {
            for (&gx, &gy) in field_x.values().iter().zip(field_y.values()) {
                matrices.push([one + gx, zero, zero, zero, one + gy, zero]);
            }
        }
        SpatialTransform::Shear { field_x, field_y } => {
            for (&gx, &gy) in field_x.values().iter().zip(field_y.values()) {
                matrices.push([one, gx, zero, gy, one, zero]);
            }
        }
        SpatialTransform::Translate { field_x, field_y } => {
            for (&gx, &gy) in field_x.values().iter().zip(field_y.values()) {
                matrices.push([one, zero, gx, zero, one, gy]);
            }
        }
    }
    PixelAffineGrid::from_matrices(w, h, matrices)
}

/// Product of two 2x3 matrices under their homogeneous 3x3 extension,
/// truncated back to 2x3.
fn mul_affine<T: Real>(a: &[T; 6], b: &[T; 6]) -> [T; 6] {
    [
        a[0] * b[0] + a[1] * b[3],
        a[0] * b[1] + a[1] * b[4],
        a[0] * b[2] + a[1] * b[5] + a[2],
        a[3] * b[0] + a[4] * b[3],
        a[3] * b[1] + a[4] * b[4],
        a[3] * b[2] + a[4] * b[5] + a[5],
    ]
}

/// Compose grids pixel-wise, multiplying in list order (left to right):
/// the result maps target coordinates through the last grid first.
///
/// Callers are responsible for any amplitude rescaling of the constituent
/// fields (the pipeline applies `1/sqrt(N)` before building grids).
pub fn compose_grids<T: Real>(grids: &[PixelAffineGrid<T>]) -> Result<PixelAffineGrid<T>> {
    let first = grids.first().ok_or(Error::EmptyComposition)?;
    let (w, h) = first.dimensions();
    for g in &grids[1..] {
        if g.dimensions() != (w, h) {
            return Err(Error::DimensionMismatch {
                expected_width: w,
                expected_height: h,
                width: g.width(),
                height: g.height(),
            });
        }
    }
    if grids.len() == 1 {
        return Ok(first.clone());
    }
    let mut matrices = first.matrices().to_vec();
    for g in &grids[1..] {
        for (acc, m) in matrices.iter_mut().zip(g.matrices()) {
            *acc = mul_affine(acc, m);
        }
    }
    PixelAffineGrid::from_matrices(w, h, matrices)
}

/// Warp `image` through `grid` by backward mapping.
///
/// Each target pixel's normalized coordinates are pushed through that
/// pixel's matrix and the source is sampled there under `policy`. Pixels
/// whose matrix is exactly the identity are copied through untouched, so
/// zero-amplitude fields reproduce the input bit-for-bit.
pub fn apply_pixel_affine<T: Real>(
    image: &ImageBuffer<T>,
    grid: &PixelAffineGrid<T>,
    policy: SamplingPolicy,
) -> Result<ImageBuffer<T>> {
    let (w, h) = image.dimensions();
    if grid.dimensions() != (w, h) {
        return Err(Error::DimensionMismatch {
            expected_width: w,
            expected_height: h,
            width: grid.width(),
            height: grid.height(),
        });
    }
    if let Some(i) = grid
        .matrices()
        .iter()
        .position(|m| m.iter().any(|v| !v.is_finite()))
    {
        return Err(Error::NonFiniteMatrix {
            x: i % w,
            y: i / w,
        });
    }

    let zero = T::zero();
    let one = T::one();
    let identity = [one, zero, zero, zero, one, zero];
    let half = real::<T>(0.5);
    let two = real::<T>(2.0);

    // Pixel index -> normalized coordinate in [-1, 1] (0 for 1-wide axes).
    let norm = |i: usize, n: usize| -> T {
        if n > 1 {
            two * real::<T>(i as f64) / real::<T>((n - 1) as f64) - one
        } else {
            zero
        }
    };
    let x_norm: Vec<T> = (0..w).map(|x| norm(x, w)).collect();
    let span_x = real::<T>(w.saturating_sub(1) as f64);
    let span_y = real::<T>(h.saturating_sub(1) as f64);

    let mut data = Vec::with_capacity(w * h * 3);
    for y in 0..h {
        let yn = norm(y, h);
        for x in 0..w {
            let m = grid.matrix(x, y);
            if m == identity {
                data.extend_from_slice(&image.pixel(x, y));
                continue;
            }
            let xn = x_norm[x];
            let xs = m[0] * xn + m[1] * yn + m[2];
            let ys = m[3] * xn + m[4] * yn + m[5];
            // Back to pixel units.
            let px = (xs + one) * span_x * half;
            let py = (ys + one) * span_y * half;
            let rgb = match policy.interpolation {
                Interpolation::Nearest => sample_nearest(image, px, py, policy.padding),
                Interpolation::Bilinear => sample_bilinear(image, px, py, policy.padding),
            };
            data.extend_from_slice(&rgb.map(clamp01));
        }
    }
    ImageBuffer::new(w, h, data)
}

fn fetch<T: Real>(image: &ImageBuffer<T>, x: i64, y: i64, padding: Padding) -> [T; 3] {
    let (w, h) = (image.width() as i64, image.height() as i64);
    match padding {
        Padding::EdgeClamp => {
            let cx = x.clamp(0, w - 1) as usize;
            let cy = y.clamp(0, h - 1) as usize;
            image.pixel(cx, cy)
        }
        Padding::ZeroFill => {
            if x < 0 || y < 0 || x >= w || y >= h {
                [T::zero(); 3]
            } else {
                image.pixel(x as usize, y as usize)
            }
        }
    }
}

fn sample_nearest<T: Real>(image: &ImageBuffer<T>, px: T, py: T, padding: Padding) -> [T; 3] {
    let x = px.round().to_f64().expect("finite coordinate") as i64;
    let y = py.round().to_f64().expect("finite coordinate") as i64;
    fetch(image, x, y, padding)
}

fn sample_bilinear<T: Real>(image: &ImageBuffer<T>, px: T, py: T, padding: Padding) -> [T; 3] {
    let x0f = px.floor();
    let y0f = py.floor();
    let fx = px - x0f;
    let fy = py - y0f;
    let x0 = x0f.to_f64().expect("finite coordinate") as i64;
    let y0 = y0f.to_f64().expect("finite coordinate") as i64;

    let t00 = fetch(image, x0, y0, padding);
    let t10 = fetch(image, x0 + 1, y0, padding);
    let t01 = fetch(image, x0, y0 + 1, padding);
    let t11 = fetch(image, x0 + 1, y0 + 1, padding);

    let one = T::one();
    let mut out = [T::zero(); 3];
    for c in 0..3 {
        let top = t00[c] * (one - fx) + t10[c] * fx;
        let bottom = t01[c] * (one - fx) + t11[c] * fx;
        out[c] = top * (one - fy) + bottom * fy;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grf::ScalarField;

    fn ramp(n: usize) -> ImageBuffer<f64> {
        ImageBuffer::from_fn(n, n, |x, y| {
            let v = (y * n + x) as f64 / (n * n - 1) as f64;
            [v, v, v]
        })
        .unwrap()
    }

    fn constant_transform(
        build: impl FnOnce(ScalarField<f64>, ScalarField<f64>) -> SpatialTransform<f64>,
        n: usize,
        gx: f64,
        gy: f64,
    ) -> SpatialTransform<f64> {
        build(
            ScalarField::constant(n, n, gx).unwrap(),
            ScalarField::constant(n, n, gy).unwrap(),
        )
    }

    #[test]
    fn zero_rotation_builds_identity() {
        let field = ScalarField::constant(5, 3, 0.0).unwrap();
        let grid = build_pixel_affine(&SpatialTransform::Rotate { field }).unwrap();
        for m in grid.matrices() {
            assert_eq!(*m, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        }
    }

    #[test]
    fn constant_translate_matrix() {
        let t = constant_transform(
            |field_x, field_y| SpatialTransform::Translate { field_x, field_y },
            4,
            0.25,
            0.0,
        );
        let grid = build_pixel_affine(&t).unwrap();
        for m in grid.matrices() {
            assert_eq!(*m, [1.0, 0.0, 0.25, 0.0, 1.0, 0.0]);
        }
    }

    #[test]
    fn quarter_turn_rotation_matrix() {
        let field = ScalarField::constant(2, 2, 0.5).unwrap();
        let grid = build_pixel_affine(&SpatialTransform::Rotate { field }).unwrap();
        let m = grid.matrix(0, 0);
        let expect = [0.0, -1.0, 0.0, 1.0, 0.0, 0.0];
        for (got, want) in m.iter().zip(expect) {
            assert!((got - want).abs() < 1e-15, "{m:?}");
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let t = SpatialTransform::Scale {
            field_x: ScalarField::constant(4, 4, 0.1).unwrap(),
            field_y: ScalarField::constant(4, 5, 0.1).unwrap(),
        };
        assert!(matches!(
            build_pixel_affine(&t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn composing_a_single_grid_is_a_no_op() {
        let t = constant_transform(
            |field_x, field_y| SpatialTransform::Shear { field_x, field_y },
            3,
            0.2,
            -0.1,
        );
        let grid = build_pixel_affine(&t).unwrap();
        let composed = compose_grids(std::slice::from_ref(&grid)).unwrap();
        assert_eq!(composed, grid);
    }

    #[test]
    fn translations_compose_additively() {
        let a = build_pixel_affine(&constant_transform(
            |field_x, field_y| SpatialTransform::Translate { field_x, field_y },
            4,
            0.125,
            0.0,
        ))
        .unwrap();
        let b = build_pixel_affine(&constant_transform(
            |field_x, field_y| SpatialTransform::Translate { field_x, field_y },
            4,
            0.25,
            0.0,
        ))
        .unwrap();
        let ab = compose_grids(&[a, b]).unwrap();
        for m in ab.matrices() {
            assert_eq!(*m, [1.0, 0.0, 0.375, 0.0, 1.0, 0.0]);
        }
    }

    #[test]
    fn double_quarter_turn_is_a_half_turn() {
        // Independent oracle: multiply the homogeneous 3x3 matrices by hand.
        let (sin, cos) = (std::f64::consts::PI * 0.5).sin_cos();
        let half_turn = [
            cos * cos - sin * sin,
            -(cos * sin + sin * cos),
            0.0,
            sin * cos + cos * sin,
            -sin * sin + cos * cos,
            0.0,
        ];
        let field = ScalarField::constant(4, 4, 0.5).unwrap();
        let quarter = build_pixel_affine(&SpatialTransform::Rotate { field }).unwrap();
        let composed = compose_grids(&[quarter.clone(), quarter]).unwrap();
        for m in composed.matrices() {
            for (got, want) in m.iter().zip(half_turn) {
                assert!((got - want).abs() < 1e-12);
            }
            assert!((m[0] + 1.0).abs() < 1e-12 && (m[4] + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_composition_is_an_error() {
        assert!(matches!(
            compose_grids::<f64>(&[]),
            Err(Error::EmptyComposition)
        ));
    }

    #[test]
    fn identity_grid_applies_bit_exactly() {
        let img = ramp(8);
        let grid = build_pixel_affine(&SpatialTransform::Rotate {
            field: ScalarField::constant(8, 8, 0.0).unwrap(),
        })
        .unwrap();
        for interpolation in [Interpolation::Bilinear, Interpolation::Nearest] {
            for padding in [Padding::EdgeClamp, Padding::ZeroFill] {
                let policy = SamplingPolicy {
                    interpolation,
                    padding,
                };
                let out = apply_pixel_affine(&img, &grid, policy).unwrap();
                assert_eq!(out, img);
            }
        }
    }

    #[test]
    fn constant_translate_matches_global_shift_oracle() {
        // A normalized offset of 2 * 2/(n-1) moves sampling by 2 pixels.
        let n = 8;
        let img = ramp(n);
        let offset = 4.0 / (n - 1) as f64;
        let grid = build_pixel_affine(&constant_transform(
            |field_x, field_y| SpatialTransform::Translate { field_x, field_y },
            n,
            offset,
            0.0,
        ))
        .unwrap();
        let out = apply_pixel_affine(
            &img,
            &grid,
            SamplingPolicy {
                interpolation: Interpolation::Nearest,
                padding: Padding::EdgeClamp,
            },
        )
        .unwrap();
        let oracle = ImageBuffer::from_fn(n, n, |x, y| {
            img.pixel((x + 2).min(n - 1), y)
        })
        .unwrap();
        assert_eq!(out, oracle);
    }

    #[test]
    fn constant_quarter_turn_matches_permutation_oracle() {
        let n = 8;
        let img = ramp(n);
        let grid = build_pixel_affine(&SpatialTransform::Rotate {
            field: ScalarField::constant(n, n, 0.5).unwrap(),
        })
        .unwrap();
        let out = apply_pixel_affine(
            &img,
            &grid,
            SamplingPolicy {
                interpolation: Interpolation::Nearest,
                padding: Padding::EdgeClamp,
            },
        )
        .unwrap();
        // xs = -y_t, ys = x_t on the symmetric lattice permutes indices:
        // out(x, y) = in(n-1-y, x).
        let oracle = ImageBuffer::from_fn(n, n, |x, y| img.pixel(n - 1 - y, x)).unwrap();
        assert_eq!(out, oracle);
    }

    #[test]
    fn constant_scale_matches_minification_oracle() {
        // Odd size keeps the lattice dyadic: (1+g)=2 maps px -> 2*px - 4.
        let n = 9;
        let img = ramp(n);
        let grid = build_pixel_affine(&constant_transform(
            |field_x, field_y| SpatialTransform::Scale { field_x, field_y },
            n,
            1.0,
            1.0,
        ))
        .unwrap();
        let out = apply_pixel_affine(
            &img,
            &grid,
            SamplingPolicy {
                interpolation: Interpolation::Nearest,
                padding: Padding::EdgeClamp,
            },
        )
        .unwrap();
        let clamp = |v: i64| v.clamp(0, n as i64 - 1) as usize;
        let oracle = ImageBuffer::from_fn(n, n, |x, y| {
            img.pixel(clamp(2 * x as i64 - 4), clamp(2 * y as i64 - 4))
        })
        .unwrap();
        assert_eq!(out, oracle);
    }

    #[test]
    fn constant_shear_matches_index_oracle() {
        let n = 9;
        let img = ramp(n);
        let grid = build_pixel_affine(&constant_transform(
            |field_x, field_y| SpatialTransform::Shear { field_x, field_y },
            n,
            1.0,
            0.0,
        ))
        .unwrap();
        let out = apply_pixel_affine(
            &img,
            &grid,
            SamplingPolicy {
                interpolation: Interpolation::Nearest,
                padding: Padding::EdgeClamp,
            },
        )
        .unwrap();
        let clamp = |v: i64| v.clamp(0, n as i64 - 1) as usize;
        let oracle = ImageBuffer::from_fn(n, n, |x, y| {
            img.pixel(clamp(x as i64 + y as i64 - 4), y)
        })
        .unwrap();
        assert_eq!(out, oracle);
    }

    #[test]
    fn rotation_angles_respect_the_amplitude_bound() {
        let alpha = 0.2;
        let field = crate::grf::synthesize_field(&crate::grf::FieldSpec::new(
            16, 16, 5.0, alpha, 3,
        ))
        .unwrap();
        let grid = build_pixel_affine(&SpatialTransform::Rotate { field }).unwrap();
        for m in grid.matrices() {
            let angle = m[3].atan2(m[0]).abs();
            assert!(angle <= std::f64::consts::PI * alpha * (1.0 + 1e-12));
        }
    }

    #[test]
    fn grid_dimension_mismatch_is_rejected_on_apply() {
        let img = ramp(8);
        let grid = PixelAffineGrid::identity(4, 4).unwrap();
        assert!(matches!(
            apply_pixel_affine(&img, &grid, SamplingPolicy::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_finite_matrices_are_rejected() {
        let mut matrices = vec![[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]; 16];
        matrices[5][2] = f64::NAN;
        assert!(matches!(
            PixelAffineGrid::from_matrices(4, 4, matrices),
            Err(Error::NonFiniteMatrix { x: 1, y: 1 })
        ));
    }
}
