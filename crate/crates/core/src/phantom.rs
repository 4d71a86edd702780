//! Synthetic speckle phantoms with a known elliptical scaffold.
//!
//! A phantom is a two-region image: a dark ellipse (the scaffold) on a
//! brighter background, each region carrying multiplicative speckle. Every
//! pixel draws one standardized Rayleigh variate `z` (zero mean, unit
//! variance) and takes the gray `clamp(round(mean * (1 + scale * z)))`, where
//! `mean` and `scale` belong to the pixel's region. Draws come from
//! `ChaCha8Rng` seeded with `seed`, consumed in row-major order, so a spec
//! always produces the same bytes on every platform.
//!
//! A pixel `(x, y)` is inside the ellipse when
//! `((x - cx) / a)^2 + ((y - cy) / b)^2 <= 1`.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{save_image, BinaryMask, Grayscale8Image};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PhantomSpec {
    pub width: usize,
    pub height: usize,
    pub cx: f64,
    pub cy: f64,
    /// Horizontal semi-axis in pixels.
    pub a: f64,
    /// Vertical semi-axis in pixels.
    pub b: f64,
    pub background_mean: f64,
    #[serde(default)]
    pub background_noise: f64,
    pub scaffold_mean: f64,
    #[serde(default)]
    pub scaffold_noise: f64,
    #[serde(default)]
    pub seed: u64,
}

impl PhantomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Phantom("image dimensions must be positive".into()));
        }
        if !(self.a >= 1.0 && self.b >= 1.0) {
            return Err(Error::Phantom(format!(
                "ellipse semi-axes ({}, {}) fall below one pixel",
                self.a, self.b
            )));
        }
        let (w, h) = ((self.width - 1) as f64, (self.height - 1) as f64);
        if self.cx - self.a < 0.0 || self.cx + self.a > w || self.cy - self.b < 0.0 || self.cy + self.b > h {
            return Err(Error::Phantom(format!(
                "ellipse centered at ({}, {}) with semi-axes ({}, {}) leaves the {}x{} image",
                self.cx, self.cy, self.a, self.b, self.width, self.height
            )));
        }
        if !(self.scaffold_mean < self.background_mean) {
            return Err(Error::Phantom(format!(
                "scaffold mean {} must be darker than background mean {}",
                self.scaffold_mean, self.background_mean
            )));
        }
        for (name, m) in [("background", self.background_mean), ("scaffold", self.scaffold_mean)] {
            if !(0.0..=255.0).contains(&m) {
                return Err(Error::Phantom(format!("{name} mean {m} outside 0..=255")));
            }
        }
        if !(self.background_noise >= 0.0 && self.scaffold_noise >= 0.0) {
            return Err(Error::Phantom("noise scales must be >= 0".into()));
        }
        Ok(())
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        let u = (x as f64 - self.cx) / self.a;
        let v = (y as f64 - self.cy) / self.b;
        u * u + v * v <= 1.0
    }

    /// Continuous ellipse area `pi * a * b`.
    pub fn analytic_area(&self) -> f64 {
        std::f64::consts::PI * self.a * self.b
    }
}

/// A generated image and its exact scaffold mask.
#[derive(Clone, Debug)]
pub struct Phantom {
    pub image: Grayscale8Image,
    pub mask: BinaryMask,
}

impl Phantom {
    /// Black-pixel count of the ground-truth mask.
    pub fn true_area(&self) -> usize {
        self.mask.count_black()
    }
}

const RAYLEIGH_MEAN: f64 = 1.253_314_137_315_500_3; // sqrt(pi / 2)
const RAYLEIGH_SD: f64 = 0.655_136_377_562_033_6; // sqrt((4 - pi) / 2)

/// Unit-scale Rayleigh variate shifted and scaled to zero mean, unit variance.
fn standard_rayleigh(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.random();
    let r = (-2.0 * (1.0 - u).ln()).sqrt();
    (r - RAYLEIGH_MEAN) / RAYLEIGH_SD
}

pub fn generate_phantom(spec: &PhantomSpec) -> Result<Phantom> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mask = BinaryMask::from_fn(spec.width, spec.height, |x, y| spec.contains(x, y));
    let image = Grayscale8Image::from_fn(spec.width, spec.height, |x, y| {
        let z = standard_rayleigh(&mut rng);
        let (mean, scale) = if mask.is_black(x, y) {
            (spec.scaffold_mean, spec.scaffold_noise)
        } else {
            (spec.background_mean, spec.background_noise)
        };
        let factor = (1.0 + scale * z).max(0.0);
        (mean * factor + 0.5).floor().clamp(0.0, 255.0) as u8
    });
    Ok(Phantom { image, mask })
}

/// A longitudinal run of phantoms whose scaffold shrinks and changes brightness.
///
/// Step `k` (from 0) scales both semi-axes by `shrink^k`. The scaffold mean
/// is `base.scaffold_mean + mean_offsets[k]` when offsets are given, else
/// `base.scaffold_mean + k * mean_increment`. The speckle seed is shared.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DegradationSeries {
    pub base: PhantomSpec,
    pub steps: usize,
    #[serde(default = "unit_shrink")]
    pub shrink: f64,
    #[serde(default)]
    pub mean_increment: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_offsets: Option<Vec<f64>>,
}

fn unit_shrink() -> f64 {
    1.0
}

impl DegradationSeries {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 1 {
            return Err(Error::Phantom("a series needs at least one step".into()));
        }
        if !(self.shrink > 0.0 && self.shrink <= 1.0) {
            return Err(Error::Phantom(format!("shrink {} outside (0, 1]", self.shrink)));
        }
        if let Some(off) = &self.mean_offsets {
            if off.len() != self.steps {
                return Err(Error::Phantom(format!(
                    "{} mean offsets given for {} steps",
                    off.len(),
                    self.steps
                )));
            }
        }
        Ok(())
    }

    pub fn step_spec(&self, k: usize) -> PhantomSpec {
        let scale = self.shrink.powi(k as i32);
        let offset = match &self.mean_offsets {
            Some(off) => off[k],
            None => k as f64 * self.mean_increment,
        };
        PhantomSpec {
            a: self.base.a * scale,
            b: self.base.b * scale,
            scaffold_mean: self.base.scaffold_mean + offset,
            ..self.base.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesFrame {
    pub spec: PhantomSpec,
    pub phantom: Phantom,
    pub true_area: usize,
}

pub fn generate_series(series: &DegradationSeries) -> Result<Vec<SeriesFrame>> {
    series.validate()?;
    (0..series.steps)
        .map(|k| {
            let spec = series.step_spec(k);
            let phantom = generate_phantom(&spec).map_err(|e| match e {
                Error::Phantom(msg) => Error::Phantom(format!("step {k}: {msg}")),
                other => other,
            })?;
            let true_area = phantom.true_area();
            Ok(SeriesFrame {
                spec,
                phantom,
                true_area,
            })
        })
        .collect()
}

/// Either a single phantom or a degradation series, as accepted on disk.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PhantomRequest {
    Series(DegradationSeries),
    Single(PhantomSpec),
}

impl PhantomRequest {
    pub fn frames(&self) -> Result<Vec<SeriesFrame>> {
        match self {
            PhantomRequest::Series(s) => generate_series(s),
            PhantomRequest::Single(spec) => {
                let phantom = generate_phantom(spec)?;
                let true_area = phantom.true_area();
                Ok(vec![SeriesFrame {
                    spec: spec.clone(),
                    phantom,
                    true_area,
                }])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ManifestEntry {
    pub index: usize,
    pub label: String,
    pub image: PathBuf,
    pub mask: PathBuf,
    pub true_area: usize,
    pub spec: PhantomSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhantomManifest {
    pub frames: Vec<ManifestEntry>,
}

/// Writes `phantom_NNN.pgm`, `phantom_NNN_mask.pgm` and `manifest.json` into
/// `dir`. Paths in the manifest are relative to `dir`.
pub fn write_phantom_set(frames: &[SeriesFrame], dir: &Path) -> Result<PhantomManifest> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut entries = Vec::with_capacity(frames.len());
    for (index, frame) in frames.iter().enumerate() {
        let image = PathBuf::from(format!("phantom_{index:03}.pgm"));
        let mask = PathBuf::from(format!("phantom_{index:03}_mask.pgm"));
        save_image(&frame.phantom.image, dir.join(&image))?;
        save_image(&frame.phantom.mask.to_image(), dir.join(&mask))?;
        entries.push(ManifestEntry {
            index,
            label: format!("STEP {index}"),
            image,
            mask,
            true_area: frame.true_area,
            spec: frame.spec.clone(),
        });
    }
    let manifest = PhantomManifest { frames: entries };
    let path = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}
