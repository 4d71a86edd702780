//! Binary erosion, dilation and opening with a flat rectangular kernel.
//!
//! Black (0) is the foreground. Pixels outside the image count as white.
//! Both operations are computed separably: a rectangle is the product of a
//! row segment and a column segment, so a horizontal pass followed by a
//! vertical pass gives the same result as the 2-D footprint.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::BinaryMask;

/// Flat rectangular structuring element anchored at its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphKernel {
    width: usize,
    height: usize,
}

impl MorphKernel {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width.is_multiple_of(2) || height.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "morphology kernel must have odd sides, got {width}x{height}"
            )));
        }
        Ok(Self { width, height })
    }

    pub fn square(size: usize) -> Result<Self> {
        Self::new(size, size)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }
}

impl Default for MorphKernel {
    fn default() -> Self {
        Self { width: 3, height: 3 }
    }
}

/// A pixel stays black iff every pixel under the kernel is black.
pub fn erode(mask: &BinaryMask, kernel: MorphKernel) -> BinaryMask {
    morph(mask, kernel, Op::Erode)
}

/// A pixel becomes black iff any pixel under the kernel is black.
pub fn dilate(mask: &BinaryMask, kernel: MorphKernel) -> BinaryMask {
    morph(mask, kernel, Op::Dilate)
}

/// `iterations` rounds of erosion followed by dilation.
pub fn morphological_open(mask: &BinaryMask, kernel: MorphKernel, iterations: u32) -> Result<BinaryMask> {
    if iterations < 1 {
        return Err(Error::InvalidParameter("opening needs at least one iteration".into()));
    }
    let mut out = mask.clone();
    for _ in 0..iterations {
        out = dilate(&erode(&out, kernel), kernel);
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Op {
    Erode,
    Dilate,
}

fn morph(mask: &BinaryMask, kernel: MorphKernel, op: Op) -> BinaryMask {
    let (w, h) = (mask.width(), mask.height());
    let black: Vec<bool> = mask.pixels().iter().map(|&p| p == BinaryMask::BLACK).collect();
    let rx = kernel.width / 2;
    let ry = kernel.height / 2;

    // Out-of-bounds pixels are white: they break erosion and never feed dilation.
    let combine = |lo: usize, hi: usize, inside: usize, at: &dyn Fn(usize) -> bool, center: usize, r: usize| match op {
        Op::Erode => center >= r && center + r < inside && (lo..=hi).all(at),
        Op::Dilate => (lo..=hi).any(at),
    };

    let mut horizontal = vec![false; w * h];
    for y in 0..h {
        let row = &black[y * w..(y + 1) * w];
        for x in 0..w {
            let lo = x.saturating_sub(rx);
            let hi = (x + rx).min(w - 1);
            horizontal[y * w + x] = combine(lo, hi, w, &|i| row[i], x, rx);
        }
    }
    let mut pixels = vec![BinaryMask::WHITE; w * h];
    for x in 0..w {
        for y in 0..h {
            let lo = y.saturating_sub(ry);
            let hi = (y + ry).min(h - 1);
            if combine(lo, hi, h, &|j| horizontal[j * w + x], y, ry) {
                pixels[y * w + x] = BinaryMask::BLACK;
            }
        }
    }
    BinaryMask::from_raw_unchecked(w, h, pixels)
}
