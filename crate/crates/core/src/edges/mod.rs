//! Canny contour extraction: Gaussian blur, Sobel gradients, non-maximum
//! suppression and double-threshold hysteresis.
//!
//! Convolutions replicate the border. The outermost one-pixel frame never
//! carries an edge.

mod canny;
mod gaussian;
mod sobel;

pub use canny::{canny, canny_stages, hysteresis, non_max_suppression, CannyParams, CannyStages};
pub use gaussian::{gaussian_blur, gaussian_kernel};
pub use sobel::{sobel_gradients, sobel_gradients_with_norm, sobel_kernels, GradientField, GradientNorm};

use crate::error::{Error, Result};

pub(crate) fn check_odd(size: usize, min: usize, what: &str) -> Result<()> {
    if size.is_multiple_of(2) || size < min {
        return Err(Error::InvalidParameter(format!(
            "{what} must be odd and >= {min}, got {size}"
        )));
    }
    Ok(())
}

/// 1-D convolution of `src` (length `len`, stride `stride` from `offset`)
/// with `taps` centered, replicating the ends.
#[inline]
pub(crate) fn convolve_line(src: &[f64], offset: usize, stride: usize, len: usize, taps: &[f64], at: usize) -> f64 {
    let r = (taps.len() / 2) as isize;
    taps.iter()
        .enumerate()
        .map(|(t, &wt)| {
            let i = (at as isize + t as isize - r).clamp(0, len as isize - 1) as usize;
            wt * src[offset + i * stride]
        })
        .sum()
}

/// Separable 2-D convolution on an `f64` plane: `row_taps` along x, then
/// `col_taps` along y.
pub(crate) fn convolve_separable(
    src: &[f64],
    width: usize,
    height: usize,
    row_taps: &[f64],
    col_taps: &[f64],
) -> Vec<f64> {
    let mut tmp = vec![0.0; width * height];
    for y in 0..height {
        for x in 0..width {
            tmp[y * width + x] = convolve_line(src, y * width, 1, width, row_taps, x);
        }
    }
    let mut out = vec![0.0; width * height];
    for y in 0..height {
        for x in 0..width {
            out[y * width + x] = convolve_line(&tmp, x, width, height, col_taps, y);
        }
    }
    out
}
