//! Texture descriptors over a region of interest: first-order gray
//! statistics, a 16-level co-occurrence matrix with four second-order
//! features, and smoothed gray-value distribution curves.

mod first_order;
mod glcm;
mod savgol;

use serde::Serialize;

use crate::error::{Error, Result};

pub use first_order::{coefficient_of_variation, first_order_stats, FirstOrderStats};
pub use glcm::{compute_glcm, glcm_features, Glcm16, GlcmOffset, SecondOrderStats, GLCM_LEVELS};
pub use savgol::{savitzky_golay, SmoothingParams};

/// Requantizes 8-bit grays to 16 levels by `g / 16`.
pub fn quantize16(pixels: &[u8]) -> Vec<u8> {
    pixels.iter().map(|&g| g >> 4).collect()
}

/// Gray-value frequency curve of an ROI, raw and smoothed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PixelDistribution {
    /// `counts[g]` pixels have gray `g`.
    pub counts: Vec<f64>,
    pub smoothed: Vec<f64>,
}

pub fn pixel_distribution(pixels: &[u8], smoothing: &SmoothingParams) -> Result<PixelDistribution> {
    if pixels.is_empty() {
        return Err(Error::Empty("ROI has no pixels"));
    }
    let mut counts = vec![0.0; 256];
    for &p in pixels {
        counts[p as usize] += 1.0;
    }
    let smoothed = savitzky_golay(&counts, smoothing)?;
    Ok(PixelDistribution { counts, smoothed })
}
