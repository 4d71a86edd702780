use serde::Serialize;

use crate::error::{Error, Result};

/// Mean, population standard deviation and coefficient of variation (percent).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FirstOrderStats {
    pub mean: f64,
    pub sd: f64,
    pub cv: f64,
    /// `false` when the mean is zero; `cv` is then reported as 0.
    pub cv_defined: bool,
}

/// `sd / mean * 100`, or `None` for a zero mean.
pub fn coefficient_of_variation(mean: f64, sd: f64) -> Option<f64> {
    (mean != 0.0).then(|| sd / mean * 100.0)
}

pub fn first_order_stats(pixels: &[u8]) -> Result<FirstOrderStats> {
    if pixels.is_empty() {
        return Err(Error::Empty("ROI has no pixels"));
    }
    let n = pixels.len() as f64;
    let mean = pixels.iter().map(|&p| p as f64).sum::<f64>() / n;
    let var = pixels.iter().map(|&p| (p as f64 - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    let cv = coefficient_of_variation(mean, sd);
    Ok(FirstOrderStats {
        mean,
        sd,
        cv: cv.unwrap_or(0.0),
        cv_defined: cv.is_some(),
    })
}
