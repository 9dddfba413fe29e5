//! MSE and PSNR between a reference and a candidate image.
//!
//! PSNR uses the domain's maximum representable value as the peak (255 for
//! Byte, 1.0 for Unit) and is `f64::INFINITY` exactly when MSE is zero;
//! serializers spell that value "inf".

use crate::error::{Error, Result};
use crate::image::{Image, Pixels};

/// MSE/PSNR pair for one (reference, candidate) image pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub mse: f64,
    /// Decibels; `f64::INFINITY` iff `mse == 0`.
    pub psnr: f64,
    /// Peak signal value the PSNR was computed against.
    pub peak: f64,
}

fn check_comparable(reference: &Image, candidate: &Image) -> Result<()> {
    if reference.width() != candidate.width() || reference.height() != candidate.height() {
        return Err(Error::DimensionMismatch(
            reference.width(),
            reference.height(),
            candidate.width(),
            candidate.height(),
        ));
    }
    if reference.domain() != candidate.domain() {
        return Err(Error::DomainMismatch(format!(
            "cannot compare {} against {}",
            reference.domain(),
            candidate.domain()
        )));
    }
    Ok(())
}

/// Mean squared error, accumulated in double precision.
pub fn mse(reference: &Image, candidate: &Image) -> Result<f64> {
    check_comparable(reference, candidate)?;
    let sum = match (reference.pixels(), candidate.pixels()) {
        (Pixels::Byte(a), Pixels::Byte(b)) => a
            .iter()
            .zip(b)
            .map(|(&x, &y)| {
                let d = f64::from(x) - f64::from(y);
                d * d
            })
            .sum::<f64>(),
        (Pixels::Unit(a), Pixels::Unit(b)) => a
            .iter()
            .zip(b)
            .map(|(&x, &y)| (x - y) * (x - y))
            .sum::<f64>(),
        _ => unreachable!("domains checked above"),
    };
    Ok(sum / reference.len() as f64)
}

/// PSNR in dB from an already-computed MSE.
pub fn psnr_from_mse(mse: f64, peak: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (peak * peak / mse).log10()
    }
}

/// Peak signal-to-noise ratio in dB; `f64::INFINITY` for identical images.
pub fn psnr(reference: &Image, candidate: &Image) -> Result<f64> {
    Ok(psnr_from_mse(mse(reference, candidate)?, reference.peak()))
}

/// Bundles MSE and PSNR from one pass over the pixels.
pub fn metrics_report(reference: &Image, candidate: &Image) -> Result<MetricsReport> {
    let mse = mse(reference, candidate)?;
    let peak = reference.peak();
    Ok(MetricsReport {
        mse,
        psnr: psnr_from_mse(mse, peak),
        peak,
    })
}
