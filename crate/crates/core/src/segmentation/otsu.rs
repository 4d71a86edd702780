//! Otsu's threshold by exhaustive scan of the between-class variance.

use super::{Histogram256, GRAY_LEVELS};
use crate::error::{Error, Result};

/// Outcome of the scan. Class statistics are reported at the chosen threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct OtsuResult {
    /// Smallest `k` maximizing `variance_curve[k]`.
    pub threshold: u8,
    /// Between-class variance `G(k)` for every candidate `k` in `0..=255`.
    pub variance_curve: Vec<f64>,
    /// Fraction of pixels in the target class (levels `< threshold`).
    pub w0: f64,
    /// Fraction of pixels in the background class (levels `>= threshold`).
    pub w1: f64,
    pub mu0: f64,
    pub mu1: f64,
    /// Mean gray of the whole image.
    pub mu: f64,
}

#[derive(Clone, Copy, Debug)]
struct Split {
    w0: f64,
    w1: f64,
    mu0: f64,
    mu1: f64,
    g: f64,
    key: Option<Ratio>,
}

/// `G(k)` up to the common factor `N^2`: `D^2 / (n0 n1)` with `D = N s0 - n0 S`.
#[derive(Clone, Copy, Debug)]
struct Ratio {
    num: u128,
    den: u128,
}

impl Ratio {
    /// `None` when `D^2` overflows, which needs images of more than 2^28 pixels.
    fn new(n0: u64, s0: u64, total: u64, sum: u64) -> Option<Self> {
        let d = (total as i128 * s0 as i128 - n0 as i128 * sum as i128).unsigned_abs();
        let den = n0 as u128 * (total - n0) as u128;
        Some(Self {
            num: d.checked_mul(d)?,
            den: den.max(1),
        })
    }

    fn gt(self, other: Ratio) -> bool {
        mul_wide(self.num, other.den) > mul_wide(other.num, self.den)
    }
}

/// Full 256-bit product as `(high, low)` halves.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const LO: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & LO);
    let (b1, b0) = (b >> 64, b & LO);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let mid = (ll >> 64) + (lh & LO) + (hl & LO);
    let lo = (ll & LO) | (mid << 64);
    let hi = a1 * b1 + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

impl Split {
    /// Exact comparison where possible, so mirrored splits with equal
    /// variance still tie and the smaller threshold wins.
    fn beats(&self, other: &Split) -> bool {
        match (self.key, other.key) {
            (Some(a), Some(b)) => a.gt(b),
            _ => self.g > other.g,
        }
    }
}

/// Splits the histogram at `k`: target = levels `0..k`, background = `k..=255`.
///
/// `n0` and `s0` are the exact integer count and gray sum below `k`. An empty
/// class has mean 0 and the split scores `G = 0`.
fn split(n0: u64, s0: u64, total: u64, sum: u64, mu: f64) -> Split {
    let n1 = total - n0;
    let s1 = sum - s0;
    let n = total as f64;
    let w0 = n0 as f64 / n;
    let w1 = n1 as f64 / n;
    let mu0 = if n0 > 0 { s0 as f64 / n0 as f64 } else { 0.0 };
    let mu1 = if n1 > 0 { s1 as f64 / n1 as f64 } else { 0.0 };
    let g = if n0 > 0 && n1 > 0 {
        w0 * (mu0 - mu).powi(2) + w1 * (mu1 - mu).powi(2)
    } else {
        0.0
    };
    Split {
        w0,
        w1,
        mu0,
        mu1,
        g,
        key: Ratio::new(n0, s0, total, sum),
    }
}

pub fn otsu_threshold(hist: &Histogram256) -> Result<OtsuResult> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::Empty("histogram has no pixels"));
    }
    let sum: u64 = hist.bins().iter().enumerate().map(|(j, &f)| j as u64 * f).sum();
    let mu = sum as f64 / total as f64;

    let mut curve = Vec::with_capacity(GRAY_LEVELS);
    let mut best: Option<(usize, Split)> = None;
    let (mut n0, mut s0) = (0u64, 0u64);
    for k in 0..GRAY_LEVELS {
        let s = split(n0, s0, total, sum, mu);
        curve.push(s.g);
        // Strict comparison keeps the smallest k on ties.
        if best.is_none_or(|(_, b)| s.beats(&b)) {
            best = Some((k, s));
        }
        n0 += hist.bins()[k];
        s0 += k as u64 * hist.bins()[k];
    }

    let (k, s) = best.expect("256 candidates were scanned");
    Ok(OtsuResult {
        threshold: k as u8,
        variance_curve: curve,
        w0: s.w0,
        w1: s.w1,
        mu0: s.mu0,
        mu1: s.mu1,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist_of(pairs: &[(usize, u64)]) -> Histogram256 {
        let mut bins = [0u64; GRAY_LEVELS];
        for &(j, f) in pairs {
            bins[j] = f;
        }
        Histogram256::from_counts(bins)
    }

    #[test]
    fn empty_histogram_is_an_error() {
        assert!(otsu_threshold(&hist_of(&[])).is_err());
    }

    #[test]
    fn two_tone_extremes_tie_and_pick_smallest() {
        let r = otsu_threshold(&hist_of(&[(0, 50), (255, 50)])).unwrap();
        assert_eq!(r.threshold, 1);
        let plateau = r.variance_curve[1];
        assert!(r.variance_curve[1..].iter().all(|&g| g == plateau));
        assert_eq!(r.variance_curve[0], 0.0);
        assert!((plateau - 127.5f64.powi(2)).abs() < 1e-9);
    }

    #[test]
    fn single_level_degenerates_to_zero() {
        let r = otsu_threshold(&hist_of(&[(42, 10)])).unwrap();
        assert_eq!(r.threshold, 0);
        assert!(r.variance_curve.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn sixty_forty_plateau_left_edge() {
        let r = otsu_threshold(&hist_of(&[(50, 60), (200, 40)])).unwrap();
        assert_eq!(r.threshold, 51);
        assert!((r.w0 - 0.6).abs() < 1e-12 && (r.w1 - 0.4).abs() < 1e-12);
        assert_eq!((r.mu0, r.mu1), (50.0, 200.0));
        assert!((r.w0 * r.mu0 + r.w1 * r.mu1 - r.mu).abs() < 1e-9);
    }

    #[test]
    fn mirrored_splits_tie_to_smallest() {
        // Symmetric about 100: {0} | {100, 200} and {0, 100} | {200} score the same.
        let r = otsu_threshold(&hist_of(&[(0, 7), (100, 3), (200, 7)])).unwrap();
        assert_eq!(r.threshold, 1);
        assert!((r.variance_curve[1] - r.variance_curve[101]).abs() < 1e-9);
    }

    #[test]
    fn wide_product() {
        assert_eq!(mul_wide(3, 5), (0, 15));
        assert_eq!(mul_wide(u128::MAX, u128::MAX), (u128::MAX - 1, 1));
        assert_eq!(mul_wide(1 << 100, 1 << 100), (1 << 72, 0));
    }
}
