//! Batch analysis of a longitudinal scan series.
//!
//! For each scan: crop, mean-shift filter, binarize, open, count the scaffold
//! area, trace its contour, then measure texture inside the feature ROI.
//! Results land in a CSV report with optional SVG trend charts.

mod chart;
mod config;
mod report;
mod run;

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::raster::save_image;

pub use chart::{emit_trend_chart, trend_chart_svg, Metric};
pub use config::{
    parse_config, ControlsConfig, FeatureSource, InputEntry, MorphologyConfig, PipelineConfig, RoiPlacement, RoiSize,
};
pub use report::{controls_csv, distribution_csv, emit_csv, feature_csv, read_feature_csv, FEATURE_HEADER};
pub use run::{
    process_image, process_scan, roi_features, run_pipeline, ControlReport, FeatureRow, PipelineReport, RoiFeatures,
    ScanArtifacts, ScanFailure,
};

/// What [`write_outputs`] should produce besides the feature CSV.
#[derive(Clone, Debug, Default)]
pub struct OutputOptions {
    pub emit_intermediates: bool,
    pub charts: Vec<Metric>,
}

/// File-name-safe version of a time label.
pub fn slug(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect();
    let s = s.trim_matches('_').to_string();
    if s.is_empty() {
        "scan".into()
    } else {
        s
    }
}

fn write(path: PathBuf, bytes: impl AsRef<[u8]>) -> Result<PathBuf> {
    std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes the report files into `config.output_dir` and returns their paths.
///
/// Always: `features.csv` (when any scan succeeded) and `resolved-config.json`.
/// With controls configured: `controls.csv` and `distribution.csv`. With
/// failures: `errors.txt`. Optionally per-scan `<slug>_{cropped,filtered,mask,contour}.pgm`
/// and `<metric>.svg` charts.
pub fn write_outputs(
    config: &PipelineConfig,
    report: &PipelineReport,
    options: &OutputOptions,
) -> Result<Vec<PathBuf>> {
    let dir: &Path = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = vec![write(dir.join("resolved-config.json"), config.to_json_pretty()?)?];

    let rows = report.rows();
    if !rows.is_empty() {
        written.push(write(dir.join("features.csv"), feature_csv(&rows)?)?);
        for metric in &options.charts {
            let svg = trend_chart_svg(&rows, *metric)?;
            written.push(write(dir.join(format!("{}.svg", metric.column())), svg)?);
        }
    }
    if let Some(c) = &report.controls {
        written.push(write(dir.join("controls.csv"), controls_csv(c)?)?);
        written.push(write(dir.join("distribution.csv"), distribution_csv(c)?)?);
    }
    if options.emit_intermediates {
        for scan in &report.scans {
            let stem = slug(&scan.label);
            for (suffix, image) in [
                ("cropped", scan.cropped.clone()),
                ("filtered", scan.filtered.clone()),
                ("mask", scan.mask.to_image()),
                ("contour", scan.contour.to_image()),
            ] {
                let path = dir.join(format!("{stem}_{suffix}.pgm"));
                save_image(&image, &path)?;
                written.push(path);
            }
        }
    }
    if !report.failures.is_empty() {
        let text: String = report
            .failures
            .iter()
            .map(|f| format!("{}: {}\n", f.label, f.message))
            .collect();
        written.push(write(dir.join("errors.txt"), text)?);
    }
    Ok(written)
}
