//! Image model shared by every stage: an immutable 8-bit grayscale raster,
//! its binary-mask counterpart, and axis-aligned regions of interest.
//!
//! Coordinates follow the usual raster convention: the origin is the top-left
//! pixel, `x` grows to the east (columns) and `y` grows downward (rows).
//! Rectangles are half-open: `[x, x + w) x [y, y + h)`.

mod pgm;
mod png_io;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use pgm::{decode_pgm, encode_pgm};

/// Single-channel 8-bit image stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grayscale8Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl fmt::Debug for Grayscale8Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grayscale8Image")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

impl Grayscale8Image {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(Self { width, height, pixels })
    }

    /// Image filled with a single gray value.
    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        Self {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self { width, height, pixels }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Pixel lookup with coordinates clamped to the image (edge replication).
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> u8 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.pixels[y * self.width + x]
    }

    pub fn full_rect(&self) -> RoiRect {
        RoiRect::new(0, 0, self.width, self.height)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        load_image(path)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        save_image(self, path)
    }
}

/// Axis-aligned rectangle in image coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoiRect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl fmt::Display for RoiRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, y={}, w={}, h={})", self.x, self.y, self.w, self.h)
    }
}

impl RoiRect {
    pub const fn new(x: usize, y: usize, w: usize, h: usize) -> Self {
        Self { x, y, w, h }
    }

    pub fn area(&self) -> usize {
        self.w * self.h
    }

    /// `true` when the rect is non-empty and lies inside a `width x height` image.
    pub fn fits(&self, width: usize, height: usize) -> bool {
        self.w > 0
            && self.h > 0
            && self.x.checked_add(self.w).is_some_and(|r| r <= width)
            && self.y.checked_add(self.h).is_some_and(|b| b <= height)
    }

    pub fn check_within(&self, width: usize, height: usize) -> Result<()> {
        if self.fits(width, height) {
            Ok(())
        } else {
            Err(Error::RectOutOfBounds {
                rect: *self,
                width,
                height,
            })
        }
    }

    /// Expresses `inner`, given relative to this rect's origin, in the parent frame.
    pub fn compose(&self, inner: RoiRect) -> RoiRect {
        RoiRect::new(self.x + inner.x, self.y + inner.y, inner.w, inner.h)
    }

    /// A `w x h` rect centered inside `self` (rounding the offset down).
    pub fn centered(&self, w: usize, h: usize) -> Option<RoiRect> {
        if w > self.w || h > self.h || w == 0 || h == 0 {
            return None;
        }
        Some(RoiRect::new(self.x + (self.w - w) / 2, self.y + (self.h - h) / 2, w, h))
    }

    /// A `w x h` rect whose center is as close as possible to `(cx, cy)` while
    /// staying inside a `width x height` image.
    pub fn around(cx: f64, cy: f64, w: usize, h: usize, width: usize, height: usize) -> Option<RoiRect> {
        if w == 0 || h == 0 || w > width || h > height {
            return None;
        }
        let place = |c: f64, len: usize, limit: usize| -> usize {
            let start = (c - len as f64 / 2.0).round();
            start.clamp(0.0, (limit - len) as f64) as usize
        };
        Some(RoiRect::new(place(cx, w, width), place(cy, h, height), w, h))
    }
}

/// Per-pixel {0, 255} image. Black (0) marks the scaffold, white (255) the
/// background.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryMask")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("black", &self.count_black())
            .finish()
    }
}

impl BinaryMask {
    pub const BLACK: u8 = 0;
    pub const WHITE: u8 = 255;

    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "mask of {width}x{height} cannot hold {} pixels",
                pixels.len()
            )));
        }
        if let Some(bad) = pixels.iter().find(|&&p| p != Self::BLACK && p != Self::WHITE) {
            return Err(Error::InvalidImage(format!(
                "mask pixels must be 0 or 255, found {bad}"
            )));
        }
        Ok(Self { width, height, pixels })
    }

    /// All-white mask.
    pub fn white(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "mask dimensions must be positive");
        Self {
            width,
            height,
            pixels: vec![Self::WHITE; width * height],
        }
    }

    /// Mask whose black pixels are those where `f(x, y)` is true.
    pub fn from_fn(width: usize, height: usize, mut black: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(width > 0 && height > 0, "mask dimensions must be positive");
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(if black(x, y) { Self::BLACK } else { Self::WHITE });
            }
        }
        Self { width, height, pixels }
    }

    pub(crate) fn from_raw_unchecked(width: usize, height: usize, pixels: Vec<u8>) -> Self {
        debug_assert!(pixels.iter().all(|&p| p == 0 || p == 255));
        debug_assert_eq!(pixels.len(), width * height);
        Self { width, height, pixels }
    }

    /// Interprets a grayscale image as a mask; fails on any value other than 0 or 255.
    pub fn from_image(image: &Grayscale8Image) -> Result<Self> {
        Self::new(image.width(), image.height(), image.pixels().to_vec())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn is_black(&self, x: usize, y: usize) -> bool {
        self.get(x, y) == Self::BLACK
    }

    /// Number of black (scaffold) pixels: the scaffold area in pixels.
    pub fn count_black(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == Self::BLACK).count()
    }

    pub fn count_white(&self) -> usize {
        self.pixels.len() - self.count_black()
    }

    /// Centroid `(x, y)` of the black pixels, `None` when there are none.
    pub fn black_centroid(&self) -> Option<(f64, f64)> {
        let (mut sx, mut sy, mut n) = (0u64, 0u64, 0u64);
        for (i, &p) in self.pixels.iter().enumerate() {
            if p == Self::BLACK {
                sx += (i % self.width) as u64;
                sy += (i / self.width) as u64;
                n += 1;
            }
        }
        (n > 0).then(|| (sx as f64 / n as f64, sy as f64 / n as f64))
    }

    pub fn to_image(&self) -> Grayscale8Image {
        Grayscale8Image {
            width: self.width,
            height: self.height,
            pixels: self.pixels.clone(),
        }
    }
}

/// Number of black pixels in `mask`.
pub fn count_black(mask: &BinaryMask) -> usize {
    mask.count_black()
}

/// Loads a binary PGM (`P5`, maxval 255) or an 8-bit grayscale PNG.
///
/// The format is chosen from the file's magic bytes, not its extension.
pub fn load_image(path: impl AsRef<Path>) -> Result<Grayscale8Image> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(b"P5") {
        decode_pgm(&bytes)
    } else if bytes.starts_with(png_io::SIGNATURE) {
        png_io::decode_png(&bytes)
    } else {
        Err(Error::UnsupportedFormat(path.to_path_buf()))
    }
}

/// Writes `image` to `path`. Files ending in `.png` are written as 8-bit
/// grayscale PNG, everything else as binary PGM.
pub fn save_image(image: &Grayscale8Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let is_png = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png"));
    let bytes = if is_png {
        png_io::encode_png(image)?
    } else {
        encode_pgm(image)
    };
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Copies the pixels under `rect` into a new `rect.w x rect.h` image.
pub fn crop(image: &Grayscale8Image, rect: RoiRect) -> Result<Grayscale8Image> {
    let pixels = extract_roi(image, rect)?;
    Ok(Grayscale8Image {
        width: rect.w,
        height: rect.h,
        pixels,
    })
}

/// Row-major gray values under `rect`.
pub fn extract_roi(image: &Grayscale8Image, rect: RoiRect) -> Result<Vec<u8>> {
    rect.check_within(image.width(), image.height())?;
    let mut out = Vec::with_capacity(rect.area());
    for row in rect.y..rect.y + rect.h {
        let start = row * image.width() + rect.x;
        out.extend_from_slice(&image.pixels()[start..start + rect.w]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(w: usize, h: usize) -> Grayscale8Image {
        Grayscale8Image::from_fn(w, h, |x, y| (x + 10 * y) as u8)
    }

    #[test]
    fn rejects_inconsistent_dimensions() {
        assert!(Grayscale8Image::new(2, 2, vec![0; 3]).is_err());
        assert!(Grayscale8Image::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn crop_offsets_origin() {
        let img = ramp(10, 10);
        let out = crop(&img, RoiRect::new(2, 3, 4, 5)).unwrap();
        assert_eq!((out.width(), out.height()), (4, 5));
        assert_eq!(out.get(0, 0), img.get(2, 3));
        assert_eq!(out.get(3, 4), img.get(5, 7));
    }

    #[test]
    fn crop_full_rect_is_identity() {
        let img = ramp(7, 5);
        assert_eq!(crop(&img, img.full_rect()).unwrap(), img);
    }

    #[test]
    fn manual_segmentation_window() {
        // Column range [0, 369) x row range [0, 200) of a 496x369 scan.
        let img = Grayscale8Image::filled(496, 369, 9);
        let out = crop(&img, RoiRect::new(0, 0, 369, 200)).unwrap();
        assert_eq!((out.width(), out.height()), (369, 200));
    }

    #[test]
    fn out_of_bounds_rects_fail() {
        let img = ramp(10, 10);
        assert!(matches!(
            crop(&img, RoiRect::new(5, 0, 6, 1)),
            Err(Error::RectOutOfBounds { .. })
        ));
        assert!(extract_roi(&img, RoiRect::new(0, 0, 0, 1)).is_err());
        assert!(extract_roi(&img, RoiRect::new(usize::MAX, 0, 2, 1)).is_err());
    }

    #[test]
    fn roi_lengths() {
        let img = Grayscale8Image::filled(496, 369, 1);
        assert_eq!(extract_roi(&img, RoiRect::new(10, 10, 135, 58)).unwrap().len(), 7830);
        assert_eq!(extract_roi(&img, RoiRect::new(10, 10, 75, 42)).unwrap().len(), 3150);
        let r = ramp(4, 4);
        assert_eq!(extract_roi(&r, RoiRect::new(0, 0, 1, 1)).unwrap(), vec![r.get(0, 0)]);
        assert_eq!(extract_roi(&r, r.full_rect()).unwrap(), r.pixels());
    }

    #[test]
    fn centered_and_around() {
        let outer = RoiRect::new(10, 20, 135, 58);
        assert_eq!(outer.centered(75, 42), Some(RoiRect::new(40, 28, 75, 42)));
        assert_eq!(outer.centered(200, 1), None);
        assert_eq!(RoiRect::around(2.0, 2.0, 4, 4, 10, 10), Some(RoiRect::new(0, 0, 4, 4)));
        assert_eq!(RoiRect::around(5.0, 5.0, 4, 2, 10, 10), Some(RoiRect::new(3, 4, 4, 2)));
    }

    #[test]
    fn mask_validation_and_counts() {
        assert!(BinaryMask::new(2, 1, vec![0, 7]).is_err());
        let m = BinaryMask::from_fn(10, 10, |x, y| (3..7).contains(&x) && (2..6).contains(&y));
        assert_eq!(m.count_black(), 16);
        assert_eq!(m.count_black() + m.count_white(), 100);
        assert_eq!(m.black_centroid(), Some((4.5, 3.5)));
        assert_eq!(BinaryMask::white(3, 3).count_black(), 0);
        assert_eq!(BinaryMask::white(3, 3).black_centroid(), None);
    }
}
