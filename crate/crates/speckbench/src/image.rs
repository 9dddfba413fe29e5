//! Grayscale image values, RGB input images, and histograms.
//!
//! An [`Image`] lives in one of two value domains: `Byte` (integers 0..=255,
//! the storage domain) or `Unit` (reals in [0.0, 1.0], the noise/filter
//! arithmetic domain). Conversions are explicit; operations that require a
//! particular domain reject the other with [`Error::DomainMismatch`].

use crate::error::{Error, Result};

/// Value domain of an [`Image`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Integer samples in 0..=255.
    Byte,
    /// Real samples in [0.0, 1.0].
    Unit,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Byte => write!(f, "Byte"),
            Domain::Unit => write!(f, "Unit"),
        }
    }
}

/// Sample storage, tagged by domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Pixels {
    Byte(Vec<u8>),
    Unit(Vec<f64>),
}

/// A rectangular grid of intensity samples in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Pixels,
}

fn check_geometry(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidGeometry(format!(
            "dimensions must be >= 1, got {width}x{height}"
        )));
    }
    let expect = width
        .checked_mul(height)
        .ok_or_else(|| Error::InvalidGeometry(format!("{width}x{height} overflows")))?;
    if len != expect {
        return Err(Error::InvalidGeometry(format!(
            "{width}x{height} image needs {expect} samples, got {len}"
        )));
    }
    Ok(())
}

impl Image {
    /// Builds a Byte-domain image. Fails if `samples` does not cover `width * height`.
    pub fn new_byte(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        check_geometry(width, height, samples.len())?;
        Ok(Self {
            width,
            height,
            pixels: Pixels::Byte(samples),
        })
    }

    /// Builds a Unit-domain image. Every sample must be finite and in [0.0, 1.0].
    pub fn new_unit(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        check_geometry(width, height, samples.len())?;
        if let Some(s) = samples.iter().find(|s| !s.is_finite() || !(0.0..=1.0).contains(*s)) {
            return Err(Error::InvalidSample(format!(
                "Unit sample {s} outside [0.0, 1.0]"
            )));
        }
        Ok(Self {
            width,
            height,
            pixels: Pixels::Unit(samples),
        })
    }

    /// Byte-domain image with every sample equal to `value`.
    pub fn constant_byte(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new_byte(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of samples (`width * height`).
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        false // width, height >= 1 by construction
    }

    pub fn domain(&self) -> Domain {
        match self.pixels {
            Pixels::Byte(_) => Domain::Byte,
            Pixels::Unit(_) => Domain::Unit,
        }
    }

    pub fn pixels(&self) -> &Pixels {
        &self.pixels
    }

    /// Byte samples, or `DomainMismatch` for a Unit image.
    pub fn as_bytes(&self) -> Result<&[u8]> {
        match &self.pixels {
            Pixels::Byte(s) => Ok(s),
            Pixels::Unit(_) => Err(Error::DomainMismatch(
                "expected a Byte image, got Unit".into(),
            )),
        }
    }

    /// Unit samples, or `DomainMismatch` for a Byte image.
    pub fn as_units(&self) -> Result<&[f64]> {
        match &self.pixels {
            Pixels::Unit(s) => Ok(s),
            Pixels::Byte(_) => Err(Error::DomainMismatch(
                "expected a Unit image, got Byte".into(),
            )),
        }
    }

    /// Maximum representable intensity for the domain: 255 for Byte, 1.0 for Unit.
    pub fn peak(&self) -> f64 {
        match self.domain() {
            Domain::Byte => 255.0,
            Domain::Unit => 1.0,
        }
    }

    /// Byte -> Unit: each sample maps to `s / 255.0` exactly.
    pub fn to_unit(&self) -> Result<Image> {
        let bytes = self.as_bytes()?;
        let samples = bytes.iter().map(|&b| f64::from(b) / 255.0).collect();
        Ok(Image {
            width: self.width,
            height: self.height,
            pixels: Pixels::Unit(samples),
        })
    }

    /// Unit -> Byte: `round(s * 255)` half away from zero, clamped to 0..=255.
    pub fn to_byte(&self) -> Result<Image> {
        let units = self.as_units()?;
        let samples = units.iter().map(|&u| byte_from_real(u * 255.0)).collect();
        Ok(Image {
            width: self.width,
            height: self.height,
            pixels: Pixels::Byte(samples),
        })
    }

    /// Per-intensity pixel counts of a Byte image.
    pub fn histogram(&self) -> Result<Histogram> {
        let bytes = self.as_bytes()?;
        let mut bins = [0u64; 256];
        for &b in bytes {
            bins[b as usize] += 1;
        }
        Ok(Histogram { bins })
    }
}

/// Rounds half away from zero, then clamps to the byte range.
///
/// `f64::round` ties away from zero, which is the crate-wide convention.
pub(crate) fn byte_from_real(x: f64) -> u8 {
    x.round().clamp(0.0, 255.0) as u8
}

/// A rectangular grid of (r, g, b) byte triples in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    samples: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, samples: Vec<[u8; 3]>) -> Result<Self> {
        check_geometry(width, height, samples.len())?;
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn samples(&self) -> &[[u8; 3]] {
        &self.samples
    }

    /// BT.601 luma: `round(0.299 r + 0.587 g + 0.114 b)` half away from zero.
    pub fn to_gray(&self) -> Image {
        let samples = self
            .samples
            .iter()
            .map(|&[r, g, b]| {
                byte_from_real(0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b))
            })
            .collect();
        Image {
            width: self.width,
            height: self.height,
            pixels: Pixels::Byte(samples),
        }
    }
}

/// Pixel counts per byte intensity level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub bins: [u64; 256],
}

impl Histogram {
    /// Total count across all bins; equals the source pixel count.
    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }
}
