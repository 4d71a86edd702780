//! Global binarization and scaffold area measurement.
//!
//! The flow is: gray histogram, Otsu threshold, `>= T -> 255` binarization,
//! opening with a small rectangular kernel, then counting black pixels.
//! Black (0) is the foreground throughout, since the scaffold is hypoechoic.

mod morphology;
mod otsu;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, Grayscale8Image};

pub use morphology::{dilate, erode, morphological_open, MorphKernel};
pub use otsu::{otsu_threshold, OtsuResult};

pub const GRAY_LEVELS: usize = 256;

/// Gray-level counts: `bins[j]` pixels have value `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram256 {
    bins: [u64; GRAY_LEVELS],
    total: u64,
}

impl Histogram256 {
    pub fn from_counts(bins: [u64; GRAY_LEVELS]) -> Self {
        let total = bins.iter().sum();
        Self { bins, total }
    }

    pub fn from_values(values: &[u8]) -> Self {
        let mut bins = [0u64; GRAY_LEVELS];
        for &v in values {
            bins[v as usize] += 1;
        }
        Self {
            bins,
            total: values.len() as u64,
        }
    }

    pub fn bins(&self) -> &[u64; GRAY_LEVELS] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

pub fn histogram(image: &Grayscale8Image) -> Histogram256 {
    Histogram256::from_values(image.pixels())
}

/// `pixel >= threshold` becomes white (255), everything else black (0).
pub fn apply_threshold(image: &Grayscale8Image, threshold: u8) -> BinaryMask {
    let pixels = image
        .pixels()
        .iter()
        .map(|&p| {
            if p >= threshold {
                BinaryMask::WHITE
            } else {
                BinaryMask::BLACK
            }
        })
        .collect();
    BinaryMask::from_raw_unchecked(image.width(), image.height(), pixels)
}

/// How the binarization threshold is chosen.
///
/// Parses from and serializes to `"otsu"` or `"fixed:<T>"`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThresholdMode {
    #[default]
    Otsu,
    Fixed(u8),
}

impl ThresholdMode {
    pub fn resolve(&self, image: &Grayscale8Image) -> Result<u8> {
        match *self {
            ThresholdMode::Otsu => Ok(otsu_threshold(&histogram(image))?.threshold),
            ThresholdMode::Fixed(t) => Ok(t),
        }
    }
}

impl fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdMode::Otsu => f.write_str("otsu"),
            ThresholdMode::Fixed(t) => write!(f, "fixed:{t}"),
        }
    }
}

impl FromStr for ThresholdMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "otsu" {
            return Ok(ThresholdMode::Otsu);
        }
        s.strip_prefix("fixed:")
            .and_then(|t| t.trim().parse::<u8>().ok())
            .map(ThresholdMode::Fixed)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("threshold mode `{s}` is neither `otsu` nor `fixed:<0-255>`"))
            })
    }
}

impl Serialize for ThresholdMode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ThresholdMode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
