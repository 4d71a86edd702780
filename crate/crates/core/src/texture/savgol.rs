//! Savitzky-Golay smoothing.
//!
//! Each output sample is the value at that position of the least-squares
//! polynomial of degree `polyorder` fitted over a `window`-long neighborhood.
//! Samples within half a window of either end use the polynomial fitted to
//! the first (or last) full window.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SmoothingParams {
    /// Odd window length.
    pub window: usize,
    pub polyorder: usize,
}

impl Default for SmoothingParams {
    fn default() -> Self {
        Self {
            window: 11,
            polyorder: 3,
        }
    }
}

impl SmoothingParams {
    pub fn validate(&self) -> Result<()> {
        if self.window.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "smoothing window must be odd, got {}",
                self.window
            )));
        }
        if self.polyorder >= self.window {
            return Err(Error::InvalidParameter(format!(
                "polyorder {} must be below the window {}",
                self.polyorder, self.window
            )));
        }
        Ok(())
    }
}

/// Hat matrix `H = Q Q^T` of the window's Vandermonde design, so that row
/// `i` of `H` evaluates the fitted polynomial at window position `i`.
fn hat_matrix(window: usize, polyorder: usize) -> DMatrix<f64> {
    let half = (window / 2) as f64;
    // Abscissae scaled into [-1, 1] keep the design well conditioned.
    let scale = if half > 0.0 { half } else { 1.0 };
    let design = DMatrix::from_fn(window, polyorder + 1, |i, k| ((i as f64 - half) / scale).powi(k as i32));
    let q = design.qr().q();
    &q * q.transpose()
}

pub fn savitzky_golay(series: &[f64], params: &SmoothingParams) -> Result<Vec<f64>> {
    params.validate()?;
    let n = params.window;
    if series.len() < n {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            window: n,
        });
    }
    let hat = hat_matrix(n, params.polyorder);
    let half = n / 2;
    let len = series.len();
    // Fitting deviations from the window's middle sample and adding it back
    // is the same fit (hat rows sum to one) but keeps constants exact.
    let eval = |row: usize, start: usize| -> f64 {
        let pivot = series[start + half];
        pivot + (0..n).map(|i| hat[(row, i)] * (series[start + i] - pivot)).sum::<f64>()
    };

    let mut out = Vec::with_capacity(len);
    for t in 0..len {
        let v = if t < half {
            eval(t, 0)
        } else if t + half >= len {
            eval(t - (len - n), len - n)
        } else {
            eval(half, t - half)
        };
        out.push(v);
    }
    Ok(out)
}
