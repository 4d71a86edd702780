//! Per-scan processing and batch execution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{FeatureSource, InputEntry, PipelineConfig, RoiPlacement};
use crate::edges::canny;
use crate::error::{Error, Result};
use crate::meanshift::mean_shift_filter;
use crate::raster::{crop, extract_roi, load_image, BinaryMask, Grayscale8Image, RoiRect};
use crate::segmentation::{apply_threshold, morphological_open};
use crate::texture::{
    compute_glcm, first_order_stats, glcm_features, pixel_distribution, quantize16, FirstOrderStats, PixelDistribution,
    SecondOrderStats,
};

/// One time point of the longitudinal report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub time: String,
    /// Black pixels of the opened mask.
    pub area_px: usize,
    pub mean: f64,
    pub sd: f64,
    pub cv_pct: f64,
    pub contrast: f64,
    pub entropy: f64,
    pub energy: f64,
    pub idm: f64,
}

impl FeatureRow {
    pub fn new(time: impl Into<String>, area_px: usize, first: &FirstOrderStats, second: &SecondOrderStats) -> Self {
        Self {
            time: time.into(),
            area_px,
            mean: first.mean,
            sd: first.sd,
            cv_pct: first.cv,
            contrast: second.contrast,
            entropy: second.entropy,
            energy: second.energy,
            idm: second.idm,
        }
    }
}

/// Texture measurements over one rectangle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoiFeatures {
    pub rect: RoiRect,
    pub first: FirstOrderStats,
    pub second: SecondOrderStats,
}

/// Everything one scan produced, in stage order.
#[derive(Clone, Debug)]
pub struct ScanArtifacts {
    pub label: String,
    pub cropped: Grayscale8Image,
    pub filtered: Grayscale8Image,
    pub threshold: u8,
    /// Thresholded mask before opening.
    pub binary: BinaryMask,
    /// Opened mask; the area is counted here and Canny runs on it.
    pub mask: BinaryMask,
    pub contour: BinaryMask,
    pub roi: RoiFeatures,
    pub row: FeatureRow,
}

pub fn roi_features(source: &Grayscale8Image, rect: RoiRect, config: &PipelineConfig) -> Result<RoiFeatures> {
    let pixels = extract_roi(source, rect)?;
    let first = first_order_stats(&pixels)?;
    let glcm = compute_glcm(&quantize16(&pixels), rect.w, config.glcm)?;
    let second = glcm_features(&glcm)?;
    Ok(RoiFeatures { rect, first, second })
}

fn place_roi(mask: &BinaryMask, config: &PipelineConfig) -> Result<RoiRect> {
    match config.roi {
        RoiPlacement::Fixed(r) => Ok(r),
        RoiPlacement::Auto => {
            let (cx, cy) = mask
                .black_centroid()
                .ok_or(Error::Empty("no scaffold pixels to center the ROI on"))?;
            RoiRect::around(
                cx,
                cy,
                config.roi_size.w,
                config.roi_size.h,
                mask.width(),
                mask.height(),
            )
            .ok_or(Error::Empty("ROI larger than the cropped image"))
        }
    }
}

/// Runs every stage on an already loaded scan.
pub fn process_image(image: &Grayscale8Image, label: &str, config: &PipelineConfig) -> Result<ScanArtifacts> {
    let cropped = crop(image, config.crop)?;
    let filtered = mean_shift_filter(&cropped, &config.mean_shift)?;
    let threshold = config.threshold.resolve(&filtered)?;
    let binary = apply_threshold(&filtered, threshold);
    let mask = morphological_open(&binary, config.morphology.kernel()?, config.morphology.iterations)?;
    let area_px = mask.count_black();
    let contour = canny(&mask.to_image(), &config.canny)?;

    let rect = place_roi(&mask, config)?;
    let source = match config.features_source {
        FeatureSource::Raw => &cropped,
        FeatureSource::Filtered => &filtered,
    };
    let roi = roi_features(source, rect, config)?;
    let row = FeatureRow::new(label, area_px, &roi.first, &roi.second);
    Ok(ScanArtifacts {
        label: label.to_string(),
        cropped,
        filtered,
        threshold,
        binary,
        mask,
        contour,
        roi,
        row,
    })
}

pub fn process_scan(input: &InputEntry, config: &PipelineConfig) -> Result<ScanArtifacts> {
    let image = load_image(&input.path)?;
    process_image(&image, &input.label, config)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub label: String,
    pub message: String,
}

/// Week-0 scaffold and tissue control ROIs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ControlReport {
    pub label: String,
    pub scaffold: RoiFeatures,
    pub tissue: RoiFeatures,
    pub scaffold_distribution: PixelDistribution,
    pub tissue_distribution: PixelDistribution,
}

#[derive(Debug)]
pub struct PipelineReport {
    /// Successful scans in input order.
    pub scans: Vec<ScanArtifacts>,
    pub failures: Vec<ScanFailure>,
    pub controls: Option<ControlReport>,
}

impl PipelineReport {
    pub fn rows(&self) -> Vec<FeatureRow> {
        self.scans.iter().map(|s| s.row.clone()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

fn control_report(first: &ScanArtifacts, config: &PipelineConfig) -> Result<Option<ControlReport>> {
    let Some(c) = &config.controls else {
        return Ok(None);
    };
    let scaffold_rect = match c.scaffold {
        Some(r) => r,
        None => first
            .roi
            .rect
            .centered(c.size.w, c.size.h)
            .ok_or(Error::Empty("control ROI does not fit inside the feature ROI"))?,
    };
    let source = match config.features_source {
        FeatureSource::Raw => &first.cropped,
        FeatureSource::Filtered => &first.filtered,
    };
    let distribution =
        |rect| -> Result<PixelDistribution> { pixel_distribution(&extract_roi(source, rect)?, &config.smoothing) };
    Ok(Some(ControlReport {
        label: first.label.clone(),
        scaffold: roi_features(source, scaffold_rect, config)?,
        tissue: roi_features(source, c.tissue, config)?,
        scaffold_distribution: distribution(scaffold_rect)?,
        tissue_distribution: distribution(c.tissue)?,
    }))
}

/// Processes every input. A failing scan is recorded and skipped; the others
/// still run. Controls come from the first input and are skipped if it failed.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineReport> {
    config.validate()?;
    let outcomes: Vec<Result<ScanArtifacts>> = config
        .inputs
        .par_iter()
        .map(|input| process_scan(input, config))
        .collect();

    let mut scans = Vec::new();
    let mut failures = Vec::new();
    let mut first_ok = None;
    for (i, (input, outcome)) in config.inputs.iter().zip(outcomes).enumerate() {
        match outcome {
            Ok(scan) => {
                if i == 0 {
                    first_ok = Some(scans.len());
                }
                scans.push(scan);
            }
            Err(e) => failures.push(ScanFailure {
                label: input.label.clone(),
                message: e.to_string(),
            }),
        }
    }

    let controls = match first_ok {
        Some(i) => control_report(&scans[i], config)?,
        None => None,
    };
    Ok(PipelineReport {
        scans,
        failures,
        controls,
    })
}
