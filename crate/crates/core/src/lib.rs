//! Local image transformations driven by Gaussian random fields.
//!
//! The crate synthesizes bounded, zero-mean, isotropic random fields with a
//! power-law spectrum ([`grf`]), turns them into per-pixel affine warps
//! ([`warp`]) and local HSV color jitter ([`color`]), validates their
//! spectra ([`spectral`]), and wires everything into a seed-deterministic
//! augmentation pipeline ([`pipeline`]).
//!
//! All numeric code is generic over the scalar type through the [`Real`]
//! trait (`f32` or `f64`); concrete aliases live at the crate root.

pub mod color;
pub mod error;
mod fft;
pub mod field_io;
pub mod grf;
pub mod image;
pub mod pipeline;
pub mod real;
pub mod rng;
pub mod spectral;
pub mod warp;

pub use error::{Error, Result};
pub use real::Real;

/// Single-precision scalar field.
pub type Field32 = grf::ScalarField<f32>;
/// Double-precision scalar field.
pub type Field64 = grf::ScalarField<f64>;
/// Single-precision RGB image.
pub type Image32 = image::ImageBuffer<f32>;
/// Double-precision RGB image.
pub type Image64 = image::ImageBuffer<f64>;
/// Single-precision augmentation config.
pub type Config32 = pipeline::AugmentConfig<f32>;
/// Double-precision augmentation config.
pub type Config64 = pipeline::AugmentConfig<f64>;
