//! Scaffold recognition and texture analysis for grayscale ultrasound scans.
//!
//! The crate tracks an implanted, hypoechoic scaffold across a longitudinal
//! series of B-mode images:
//!
//! 1. [`raster`]: load and crop 8-bit scans (binary PGM, optionally PNG).
//! 2. [`meanshift`]: spatial-range mean-shift filtering to flatten speckle.
//! 3. [`segmentation`]: Otsu binarization, morphological opening and the
//!    black-pixel scaffold area.
//! 4. [`edges`]: Canny contour extraction on the opened mask.
//! 5. [`texture`]: first-order gray statistics, 16-level GLCM features and
//!    Savitzky-Golay smoothed gray-value distributions over an ROI.
//! 6. [`pipeline`]: the batch driver that strings the stages together and
//!    writes CSV reports and SVG trend charts.
//!
//! [`phantom`] generates deterministic speckle phantoms with a known scaffold
//! mask, used for testing and demonstrations.
//!
//! Runnable walkthroughs live under `examples/`:
//!
//! ```text
//! cargo run --release --example raster_io
//! cargo run --release --example mean_shift
//! cargo run --release --example otsu_area
//! cargo run --release --example canny_contour
//! cargo run --release --example texture_features
//! cargo run --release --example phantom_series
//! cargo run --release --example degradation_report
//! ```

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod edges;
pub mod error;
pub mod meanshift;
pub mod phantom;
pub mod pipeline;
pub mod raster;
pub mod segmentation;
pub mod texture;

pub use error::{Error, Result};
pub use raster::{BinaryMask, Grayscale8Image, RoiRect};
