use serde::{Deserialize, Serialize};

use super::{check_odd, gaussian_blur, sobel_gradients_with_norm, GradientField, GradientNorm};
use crate::error::{Error, Result};
use crate::raster::{BinaryMask, Grayscale8Image};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct CannyParams {
    pub low: f64,
    pub high: f64,
    pub gaussian_kernel: usize,
    pub gaussian_sigma: f64,
    pub sobel_aperture: usize,
    pub l2_gradient: bool,
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            low: 140.0,
            high: 280.0,
            gaussian_kernel: 5,
            gaussian_sigma: 1.4,
            sobel_aperture: 3,
            l2_gradient: true,
        }
    }
}

impl CannyParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 <= self.low && self.low <= self.high) {
            return Err(Error::InvalidParameter(format!(
                "canny thresholds need 0 <= low <= high, got {} / {}",
                self.low, self.high
            )));
        }
        check_odd(self.gaussian_kernel, 3, "gaussian-kernel")?;
        check_odd(self.sobel_aperture, 3, "sobel-aperture")?;
        if !(self.gaussian_sigma > 0.0) {
            return Err(Error::InvalidParameter("gaussian-sigma must be > 0".into()));
        }
        Ok(())
    }

    pub fn norm(&self) -> GradientNorm {
        if self.l2_gradient {
            GradientNorm::L2
        } else {
            GradientNorm::L1
        }
    }
}

/// Sector index 0..4 for 0, 45, 90, 135 degrees.
#[inline]
fn sector(direction: f64) -> usize {
    let mut deg = direction.to_degrees() % 180.0;
    if deg < 0.0 {
        deg += 180.0;
    }
    ((deg + 22.5) / 45.0) as usize % 4
}

/// Offset of the neighbor lying forward along the quantized gradient.
const FORWARD: [(isize, isize); 4] = [(1, 0), (1, 1), (0, 1), (-1, 1)];

/// Thins the gradient to ridges one pixel wide.
///
/// A pixel keeps its magnitude when it is strictly greater than the neighbor
/// behind it along the quantized gradient and at least as large as the one in
/// front. Of two exactly tied neighbors (as on either side of a binary step)
/// the rear one survives, so a plateau of equal maxima is thinned to a single
/// pixel rather than kept twice or dropped entirely. The outer frame is zeroed.
pub fn non_max_suppression(field: &GradientField) -> GradientField {
    let (w, h) = (field.width, field.height);
    let mut magnitude = vec![0.0; w * h];
    if w >= 3 && h >= 3 {
        for y in 1..h - 1 {
            for x in 1..w - 1 {
                let i = y * w + x;
                let m = field.magnitude[i];
                if m <= 0.0 {
                    continue;
                }
                let (dx, dy) = FORWARD[sector(field.direction[i])];
                let ahead = field.magnitude_at((x as isize + dx) as usize, (y as isize + dy) as usize);
                let behind = field.magnitude_at((x as isize - dx) as usize, (y as isize - dy) as usize);
                if m > behind && m >= ahead {
                    magnitude[i] = m;
                }
            }
        }
    }
    GradientField {
        width: w,
        height: h,
        gx: field.gx.clone(),
        gy: field.gy.clone(),
        magnitude,
        direction: field.direction.clone(),
    }
}

/// Double-threshold edge tracking.
///
/// Magnitudes above `high` are edges; those in `(low, high]` are edges only
/// when 8-connected, possibly through other such pixels, to one above `high`.
/// Edges are white (255) on black.
pub fn hysteresis(field: &GradientField, low: f64, high: f64) -> Result<BinaryMask> {
    if !(low <= high) {
        return Err(Error::InvalidParameter(format!(
            "hysteresis needs low <= high, got {low} / {high}"
        )));
    }
    let (w, h) = (field.width, field.height);
    let mut out = vec![BinaryMask::BLACK; w * h];
    let mut stack = Vec::new();
    for (i, &m) in field.magnitude.iter().enumerate() {
        if m > high && out[i] == BinaryMask::BLACK {
            out[i] = BinaryMask::WHITE;
            stack.push(i);
            while let Some(j) = stack.pop() {
                let (x, y) = ((j % w) as isize, (j / w) as isize);
                for dy in -1..=1isize {
                    for dx in -1..=1isize {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                            continue;
                        }
                        let k = ny as usize * w + nx as usize;
                        if out[k] == BinaryMask::BLACK && field.magnitude[k] > low {
                            out[k] = BinaryMask::WHITE;
                            stack.push(k);
                        }
                    }
                }
            }
        }
    }
    Ok(BinaryMask::from_raw_unchecked(w, h, out))
}

/// Every intermediate of one Canny run.
#[derive(Clone, Debug)]
pub struct CannyStages {
    pub blurred: Grayscale8Image,
    pub gradient: GradientField,
    pub suppressed: GradientField,
    pub edges: BinaryMask,
}

pub fn canny_stages(image: &Grayscale8Image, params: &CannyParams) -> Result<CannyStages> {
    params.validate()?;
    let blurred = gaussian_blur(image, params.gaussian_kernel, params.gaussian_sigma)?;
    let gradient = sobel_gradients_with_norm(&blurred, params.sobel_aperture, params.norm())?;
    let suppressed = non_max_suppression(&gradient);
    let edges = hysteresis(&suppressed, params.low, params.high)?;
    Ok(CannyStages {
        blurred,
        gradient,
        suppressed,
        edges,
    })
}

/// Edge map of `image`: white one-pixel contours on black.
pub fn canny(image: &Grayscale8Image, params: &CannyParams) -> Result<BinaryMask> {
    canny_stages(image, params).map(|s| s.edges)
}
