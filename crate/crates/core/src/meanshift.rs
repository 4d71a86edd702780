//! Spatial-range mean-shift filtering.
//!
//! Every pixel is lifted to the joint point `(col, row, gray)` and moved, one
//! step at a time, to the unweighted mean of the pixels inside its window: a
//! square of half-width `spatial_radius` around the current position, keeping
//! only pixels whose gray lies within `range_radius` of the current gray.
//! Iteration stops once a step is no longer than `epsilon` (Euclidean norm in
//! the joint space) or after `max_iterations` steps. The filtered pixel is the
//! gray coordinate of the final point, rounded half-up.
//!
//! Filtering is single-level; there is no image pyramid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::Grayscale8Image;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields, default)]
pub struct MeanShiftParams {
    /// Half-width of the square spatial window, in pixels.
    pub spatial_radius: usize,
    /// Admissible gray difference to the current mode estimate.
    pub range_radius: f64,
    pub max_iterations: u32,
    pub epsilon: f64,
}

impl Default for MeanShiftParams {
    fn default() -> Self {
        Self {
            spatial_radius: 5,
            range_radius: 100.0,
            max_iterations: 5,
            epsilon: 1.0,
        }
    }
}

impl MeanShiftParams {
    pub fn validate(&self) -> Result<()> {
        if self.spatial_radius < 1 {
            return Err(Error::InvalidParameter("spatial-radius must be >= 1".into()));
        }
        if !(self.range_radius >= 0.0) {
            return Err(Error::InvalidParameter("range-radius must be >= 0".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidParameter("max-iterations must be >= 1".into()));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter("epsilon must be >= 0".into()));
        }
        Ok(())
    }
}

/// Iteration bookkeeping gathered while filtering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeanShiftStats {
    /// Largest number of shift steps any pixel took.
    pub max_iterations_used: u32,
    /// Pixels that stopped because the iteration budget ran out.
    pub unconverged_pixels: usize,
}

/// Mean-shift filters `image`. See the module docs for the exact procedure.
pub fn mean_shift_filter(image: &Grayscale8Image, params: &MeanShiftParams) -> Result<Grayscale8Image> {
    mean_shift_filter_with_stats(image, params).map(|(img, _)| img)
}

pub fn mean_shift_filter_with_stats(
    image: &Grayscale8Image,
    params: &MeanShiftParams,
) -> Result<(Grayscale8Image, MeanShiftStats)> {
    params.validate()?;
    let (w, h) = (image.width(), image.height());

    let rows: Vec<(Vec<u8>, MeanShiftStats)> = (0..h)
        .into_par_iter()
        .map(|y| {
            let mut row = Vec::with_capacity(w);
            let mut stats = MeanShiftStats::default();
            for x in 0..w {
                let (gray, iterations, converged) = shift_pixel(image, x, y, params);
                row.push(round_gray(gray));
                stats.max_iterations_used = stats.max_iterations_used.max(iterations);
                if !converged {
                    stats.unconverged_pixels += 1;
                }
            }
            (row, stats)
        })
        .collect();

    let mut pixels = Vec::with_capacity(w * h);
    let mut stats = MeanShiftStats::default();
    for (row, s) in rows {
        pixels.extend(row);
        stats.max_iterations_used = stats.max_iterations_used.max(s.max_iterations_used);
        stats.unconverged_pixels += s.unconverged_pixels;
    }
    Ok((Grayscale8Image::new(w, h, pixels)?, stats))
}

/// Returns the converged gray, the number of steps taken, and whether the
/// displacement criterion (rather than the budget) ended the iteration.
fn shift_pixel(image: &Grayscale8Image, x0: usize, y0: usize, p: &MeanShiftParams) -> (f64, u32, bool) {
    let (w, h) = (image.width() as isize, image.height() as isize);
    let r = p.spatial_radius as isize;
    let (mut px, mut py, mut pg) = (x0 as f64, y0 as f64, image.get(x0, y0) as f64);

    for iteration in 1..=p.max_iterations {
        let cx = (px.round() as isize).clamp(0, w - 1);
        let cy = (py.round() as isize).clamp(0, h - 1);
        let (mut sx, mut sy, mut sg, mut n) = (0.0, 0.0, 0.0, 0usize);
        for yy in (cy - r).max(0)..=(cy + r).min(h - 1) {
            for xx in (cx - r).max(0)..=(cx + r).min(w - 1) {
                let g = image.get(xx as usize, yy as usize) as f64;
                if (g - pg).abs() <= p.range_radius {
                    sx += xx as f64;
                    sy += yy as f64;
                    sg += g;
                    n += 1;
                }
            }
        }
        if n == 0 {
            // Nothing within range: the point is its own mode.
            return (pg, iteration, true);
        }
        let n = n as f64;
        let (nx, ny, ng) = (sx / n, sy / n, sg / n);
        let step = ((nx - px).powi(2) + (ny - py).powi(2) + (ng - pg).powi(2)).sqrt();
        (px, py, pg) = (nx, ny, ng);
        if step <= p.epsilon {
            return (pg, iteration, true);
        }
    }
    (pg, p.max_iterations, false)
}

#[inline]
fn round_gray(g: f64) -> u8 {
    (g + 0.5).floor().clamp(0.0, 255.0) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameters() {
        let p = MeanShiftParams::default();
        assert_eq!(p.spatial_radius, 5);
        assert_eq!(p.range_radius, 100.0);
        assert_eq!(p.max_iterations, 5);
        assert_eq!(p.epsilon, 1.0);
    }

    #[test]
    fn invalid_parameters_rejected() {
        let img = Grayscale8Image::filled(3, 3, 1);
        for bad in [
            MeanShiftParams {
                spatial_radius: 0,
                ..Default::default()
            },
            MeanShiftParams {
                range_radius: -1.0,
                ..Default::default()
            },
            MeanShiftParams {
                max_iterations: 0,
                ..Default::default()
            },
            MeanShiftParams {
                epsilon: f64::NAN,
                ..Default::default()
            },
        ] {
            assert!(mean_shift_filter(&img, &bad).is_err());
        }
    }

    #[test]
    fn constant_image_is_fixed_point() {
        let img = Grayscale8Image::filled(17, 11, 200);
        let (out, stats) = mean_shift_filter_with_stats(&img, &MeanShiftParams::default()).unwrap();
        assert_eq!(out, img);
        assert_eq!(stats.unconverged_pixels, 0);
    }

    #[test]
    fn single_pixel_unchanged() {
        let img = Grayscale8Image::filled(1, 1, 37);
        assert_eq!(mean_shift_filter(&img, &MeanShiftParams::default()).unwrap(), img);
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(round_gray(127.5), 128);
        assert_eq!(round_gray(127.49), 127);
        assert_eq!(round_gray(-3.0), 0);
        assert_eq!(round_gray(300.0), 255);
    }

    #[test]
    fn isolated_outlier_is_absorbed() {
        // A lone 60 in a field of 50 is within range of everything around it.
        let mut px = vec![50u8; 81];
        px[40] = 60;
        let img = Grayscale8Image::new(9, 9, px).unwrap();
        let out = mean_shift_filter(&img, &MeanShiftParams::default()).unwrap();
        assert_eq!(out.get(4, 4), 50);
    }
}
