//! JSON configuration for batch analysis.
//!
//! Every object rejects unknown keys. Relative input and output paths are
//! resolved against the directory holding the config file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::edges::CannyParams;
use crate::error::{Error, Result};
use crate::meanshift::MeanShiftParams;
use crate::raster::RoiRect;
use crate::segmentation::{MorphKernel, ThresholdMode};
use crate::texture::{GlcmOffset, SmoothingParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEntry {
    pub path: PathBuf,
    /// Time point shown in reports, e.g. `WEEK 4`.
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MorphologyConfig {
    /// Side of the square opening kernel.
    pub kernel: usize,
    pub iterations: u32,
}

impl Default for MorphologyConfig {
    fn default() -> Self {
        Self {
            kernel: 3,
            iterations: 2,
        }
    }
}

impl MorphologyConfig {
    pub fn kernel(&self) -> Result<MorphKernel> {
        MorphKernel::square(self.kernel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoiSize {
    pub w: usize,
    pub h: usize,
}

/// Where the per-scan feature ROI sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoiPlacement {
    /// Centered on the centroid of the scaffold (black) region of each scan.
    Auto,
    Fixed(RoiRect),
}

impl Serialize for RoiPlacement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RoiPlacement::Auto => s.serialize_str("auto"),
            RoiPlacement::Fixed(r) => r.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for RoiPlacement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Keyword(String),
            Rect(RoiRect),
        }
        match Raw::deserialize(d)? {
            Raw::Keyword(k) if k == "auto" => Ok(RoiPlacement::Auto),
            Raw::Keyword(k) => Err(serde::de::Error::custom(format!(
                "roi must be \"auto\" or a rect, got \"{k}\""
            ))),
            Raw::Rect(r) => Ok(RoiPlacement::Fixed(r)),
        }
    }
}

/// Which pixels the texture features are measured on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureSource {
    /// Cropped scan before mean-shift filtering.
    #[default]
    Raw,
    Filtered,
}

/// Week-0 control ROIs compared side by side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ControlsConfig {
    /// Scaffold control; defaults to `size` centered in the first scan's feature ROI.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaffold: Option<RoiRect>,
    pub tissue: RoiRect,
    #[serde(default = "control_size")]
    pub size: RoiSize,
}

fn control_size() -> RoiSize {
    RoiSize { w: 75, h: 42 }
}

fn feature_roi_size() -> RoiSize {
    RoiSize { w: 135, h: 58 }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("report")
}

fn auto() -> RoiPlacement {
    RoiPlacement::Auto
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PipelineConfig {
    pub inputs: Vec<InputEntry>,
    /// Manual segmentation window applied to every scan.
    pub crop: RoiRect,
    #[serde(default)]
    pub mean_shift: MeanShiftParams,
    #[serde(default)]
    pub threshold: ThresholdMode,
    #[serde(default)]
    pub morphology: MorphologyConfig,
    #[serde(default)]
    pub canny: CannyParams,
    /// Feature ROI, relative to the crop.
    #[serde(default = "auto")]
    pub roi: RoiPlacement,
    /// Size used when `roi` is `auto`.
    #[serde(default = "feature_roi_size")]
    pub roi_size: RoiSize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controls: Option<ControlsConfig>,
    #[serde(default)]
    pub glcm: GlcmOffset,
    #[serde(default)]
    pub smoothing: SmoothingParams,
    #[serde(default)]
    pub features_source: FeatureSource,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn config_err(key: &str, e: impl std::fmt::Display) -> Error {
    Error::Config {
        key: key.to_string(),
        message: e.to_string(),
    }
}

impl PipelineConfig {
    /// A config with every default filled in.
    pub fn new(inputs: Vec<InputEntry>, crop: RoiRect) -> Self {
        Self {
            inputs,
            crop,
            mean_shift: MeanShiftParams::default(),
            threshold: ThresholdMode::default(),
            morphology: MorphologyConfig::default(),
            canny: CannyParams::default(),
            roi: RoiPlacement::Auto,
            roi_size: feature_roi_size(),
            controls: None,
            glcm: GlcmOffset::default(),
            smoothing: SmoothingParams::default(),
            features_source: FeatureSource::Raw,
            output_dir: default_output_dir(),
        }
    }

    /// Parses and validates; relative paths are joined onto `base_dir`.
    pub fn from_json_str(json: &str, base_dir: &Path) -> Result<Self> {
        let mut config: PipelineConfig = serde_json::from_str(json)?;
        for input in &mut config.inputs {
            if input.path.is_relative() {
                input.path = base_dir.join(&input.path);
            }
        }
        if config.output_dir.is_relative() {
            config.output_dir = base_dir.join(&config.output_dir);
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.inputs.is_empty() {
            return Err(config_err("inputs", "at least one input is required"));
        }
        if self.crop.w == 0 || self.crop.h == 0 {
            return Err(config_err("crop", "crop must have positive size"));
        }
        let (w, h) = (self.crop.w, self.crop.h);
        self.mean_shift.validate().map_err(|e| config_err("mean-shift", e))?;
        self.morphology
            .kernel()
            .map_err(|e| config_err("morphology.kernel", e))?;
        if self.morphology.iterations < 1 {
            return Err(config_err("morphology.iterations", "must be >= 1"));
        }
        self.canny.validate().map_err(|e| config_err("canny", e))?;
        match self.roi {
            RoiPlacement::Fixed(r) => r.check_within(w, h).map_err(|e| config_err("roi", e))?,
            RoiPlacement::Auto => RoiRect::new(0, 0, self.roi_size.w, self.roi_size.h)
                .check_within(w, h)
                .map_err(|e| config_err("roi-size", e))?,
        }
        if let Some(c) = &self.controls {
            c.tissue
                .check_within(w, h)
                .map_err(|e| config_err("controls.tissue", e))?;
            if let Some(s) = c.scaffold {
                s.check_within(w, h).map_err(|e| config_err("controls.scaffold", e))?;
            }
            RoiRect::new(0, 0, c.size.w, c.size.h)
                .check_within(w, h)
                .map_err(|e| config_err("controls.size", e))?;
        }
        self.glcm.validate().map_err(|e| config_err("glcm", e))?;
        self.smoothing.validate().map_err(|e| config_err("smoothing", e))?;
        if self.smoothing.window > 256 {
            return Err(config_err(
                "smoothing.window",
                "window longer than the 256-bin histogram",
            ));
        }
        Ok(())
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Reads, parses and validates a config file.
pub fn parse_config(path: impl AsRef<Path>) -> Result<PipelineConfig> {
    let path = path.as_ref();
    let json = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    PipelineConfig::from_json_str(&json, base)
}
