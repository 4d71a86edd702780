use serde::{Deserialize, Serialize};

use super::{check_odd, convolve_separable};
use crate::error::Result;
use crate::raster::Grayscale8Image;

/// How the two derivative responses combine into a magnitude.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum GradientNorm {
    /// `|gx| + |gy|`
    L1,
    /// `sqrt(gx^2 + gy^2)`
    #[default]
    L2,
}

/// Per-pixel gradient. `direction` is `atan2(gy, gx)` in radians, with `gy`
/// positive toward increasing rows.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientField {
    pub width: usize,
    pub height: usize,
    pub gx: Vec<f64>,
    pub gy: Vec<f64>,
    pub magnitude: Vec<f64>,
    pub direction: Vec<f64>,
}

impl GradientField {
    pub fn zeros(width: usize, height: usize) -> Self {
        let n = width * height;
        Self {
            width,
            height,
            gx: vec![0.0; n],
            gy: vec![0.0; n],
            magnitude: vec![0.0; n],
            direction: vec![0.0; n],
        }
    }

    /// A field with given magnitudes and directions and no underlying derivatives.
    pub fn from_polar(width: usize, height: usize, magnitude: Vec<f64>, direction: Vec<f64>) -> Self {
        assert_eq!(magnitude.len(), width * height);
        assert_eq!(direction.len(), width * height);
        let gx = magnitude.iter().zip(&direction).map(|(m, d)| m * d.cos()).collect();
        let gy = magnitude.iter().zip(&direction).map(|(m, d)| m * d.sin()).collect();
        Self {
            width,
            height,
            gx,
            gy,
            magnitude,
            direction,
        }
    }

    #[inline]
    pub fn magnitude_at(&self, x: usize, y: usize) -> f64 {
        self.magnitude[y * self.width + x]
    }
}

/// Smoothing and derivative taps of the `aperture`-sized Sobel operator.
///
/// Smoothing is the binomial row of length `aperture`; the derivative is
/// `[-1, 0, 1]` convolved with the binomial row of length `aperture - 2`.
pub fn sobel_kernels(aperture: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_odd(aperture, 3, "sobel aperture")?;
    let binomial = |n: usize| -> Vec<f64> {
        let mut row = vec![1.0];
        for _ in 1..n {
            let mut next = vec![1.0; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row
    };
    let smooth = binomial(aperture);
    let base = binomial(aperture - 2);
    let mut deriv = vec![0.0; aperture];
    for (i, &b) in base.iter().enumerate() {
        deriv[i] -= b;
        deriv[i + 2] += b;
    }
    Ok((smooth, deriv))
}

pub fn sobel_gradients(image: &Grayscale8Image, aperture: usize) -> Result<GradientField> {
    sobel_gradients_with_norm(image, aperture, GradientNorm::L2)
}

pub fn sobel_gradients_with_norm(
    image: &Grayscale8Image,
    aperture: usize,
    norm: GradientNorm,
) -> Result<GradientField> {
    let (smooth, deriv) = sobel_kernels(aperture)?;
    let (w, h) = (image.width(), image.height());
    let src: Vec<f64> = image.pixels().iter().map(|&p| p as f64).collect();
    let gx = convolve_separable(&src, w, h, &deriv, &smooth);
    let gy = convolve_separable(&src, w, h, &smooth, &deriv);
    let magnitude = gx
        .iter()
        .zip(&gy)
        .map(|(&a, &b)| match norm {
            GradientNorm::L1 => a.abs() + b.abs(),
            GradientNorm::L2 => a.hypot(b),
        })
        .collect();
    let direction = gx.iter().zip(&gy).map(|(&a, &b)| b.atan2(a)).collect();
    Ok(GradientField {
        width: w,
        height: h,
        gx,
        gy,
        magnitude,
        direction,
    })
}
