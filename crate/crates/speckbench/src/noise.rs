//! Multiplicative speckle-noise injection, seed-reproducible per pixel.
//!
//! Each noise value is a pure function of `(seed, pixel index)` through a
//! splitmix64-style mixer, so fields are bit-identical no matter how the
//! pixels are visited or how many threads generate them.

use crate::error::{Error, Result};
use crate::image::Image;

/// Noise distribution tag. Only `Uniform` exists today; the enum is the
/// extension point for other speckle models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Distribution {
    #[default]
    Uniform,
}

/// Variance, seed, and distribution defining a reproducible speckle field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Noise variance, in (0, 1].
    pub variance: f64,
    pub seed: u64,
    pub distribution: Distribution,
}

impl NoiseSpec {
    pub fn new(variance: f64, seed: u64) -> Result<Self> {
        if !variance.is_finite() || variance <= 0.0 || variance > 1.0 {
            return Err(Error::InvalidVariance(variance));
        }
        Ok(Self {
            variance,
            seed,
            distribution: Distribution::Uniform,
        })
    }
}

/// A field of multiplicative noise values matching some image's dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseField {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

pub(crate) const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer: decorrelates consecutive counters.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in [0, 1) for pixel counter `k` under `seed`.
pub(crate) fn unit_draw(seed: u64, k: u64) -> f64 {
    let z = mix64(seed.wrapping_add(k.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)));
    // Top 53 bits give the full f64 mantissa resolution.
    (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Noise value for pixel counter `k`: uniform on [-sqrt(3v), sqrt(3v)),
/// zero mean with variance `v`.
fn noise_value(spec: &NoiseSpec, k: u64) -> f64 {
    let amplitude = (3.0 * spec.variance).sqrt();
    (2.0 * unit_draw(spec.seed, k) - 1.0) * amplitude
}

/// Samples a `width x height` noise field for `spec`.
pub fn noise_field(width: usize, height: usize, spec: &NoiseSpec) -> Result<NoiseField> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidGeometry(format!(
            "dimensions must be >= 1, got {width}x{height}"
        )));
    }
    NoiseSpec::new(spec.variance, spec.seed)?;
    let values = (0..width * height).map(|k| noise_value(spec, k as u64)).collect();
    Ok(NoiseField {
        width,
        height,
        values,
    })
}

/// Applies `out = clamp(in + n * in, 0, 1)` with `n` drawn per pixel from `spec`.
pub fn add_speckle(img: &Image, spec: &NoiseSpec) -> Result<Image> {
    let units = img.as_units()?;
    NoiseSpec::new(spec.variance, spec.seed)?;
    let samples = units
        .iter()
        .enumerate()
        .map(|(k, &x)| (x + noise_value(spec, k as u64) * x).clamp(0.0, 1.0))
        .collect();
    Image::new_unit(img.width(), img.height(), samples)
}
