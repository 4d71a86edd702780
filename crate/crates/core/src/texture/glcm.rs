//! 16x16 gray-level co-occurrence matrix and its second-order features.
//!
//! Pairs are ordered (the matrix is not symmetrized) and counted for a single
//! pixel offset. Angles are measured counter-clockwise from the +x axis with
//! rows growing downward, so 45 degrees pairs a pixel with its up-right
//! neighbor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GLCM_LEVELS: usize = 16;

/// Pixel displacement between the two members of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GlcmOffset {
    pub distance: usize,
    /// One of 0, 45, 90, 135.
    pub angle: u16,
}

impl Default for GlcmOffset {
    fn default() -> Self {
        Self { distance: 1, angle: 0 }
    }
}

impl GlcmOffset {
    pub fn validate(&self) -> Result<()> {
        self.delta().map(|_| ())
    }

    /// `(dx, dy)` in raster coordinates.
    pub fn delta(&self) -> Result<(isize, isize)> {
        if self.distance < 1 {
            return Err(Error::InvalidParameter("glcm distance must be >= 1".into()));
        }
        let d = self.distance as isize;
        match self.angle {
            0 => Ok((d, 0)),
            45 => Ok((d, -d)),
            90 => Ok((0, -d)),
            135 => Ok((-d, -d)),
            a => Err(Error::InvalidParameter(format!(
                "glcm angle must be 0, 45, 90 or 135, got {a}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Glcm16 {
    pub counts: [[u64; GLCM_LEVELS]; GLCM_LEVELS],
    /// `counts` normalized by the number of pairs; all zero when there are none.
    pub probs: [[f64; GLCM_LEVELS]; GLCM_LEVELS],
    pub offset: GlcmOffset,
    pub pairs: u64,
}

impl Glcm16 {
    pub fn from_counts(counts: [[u64; GLCM_LEVELS]; GLCM_LEVELS], offset: GlcmOffset) -> Self {
        let pairs: u64 = counts.iter().flatten().sum();
        let mut probs = [[0.0; GLCM_LEVELS]; GLCM_LEVELS];
        if pairs > 0 {
            for (prow, crow) in probs.iter_mut().zip(&counts) {
                for (p, &c) in prow.iter_mut().zip(crow) {
                    *p = c as f64 / pairs as f64;
                }
            }
        }
        Self {
            counts,
            probs,
            offset,
            pairs,
        }
    }

    /// `true` when the grid was too small to hold a single pair.
    pub fn is_empty(&self) -> bool {
        self.pairs == 0
    }
}

/// Counts ordered level pairs `(grid[p], grid[p + offset])` over a
/// `width`-wide row-major grid of levels in `0..16`.
pub fn compute_glcm(levels: &[u8], width: usize, offset: GlcmOffset) -> Result<Glcm16> {
    let (dx, dy) = offset.delta()?;
    if levels.is_empty() || width == 0 || !levels.len().is_multiple_of(width) {
        return Err(Error::InvalidParameter(format!(
            "level grid of {} values is not a non-empty multiple of width {width}",
            levels.len()
        )));
    }
    if let Some(&bad) = levels.iter().find(|&&l| l as usize >= GLCM_LEVELS) {
        return Err(Error::InvalidParameter(format!("level {bad} is outside 0..16")));
    }
    let (w, h) = (width as isize, (levels.len() / width) as isize);
    let mut counts = [[0u64; GLCM_LEVELS]; GLCM_LEVELS];
    for y in 0..h {
        let ny = y + dy;
        if ny < 0 || ny >= h {
            continue;
        }
        for x in 0..w {
            let nx = x + dx;
            if nx < 0 || nx >= w {
                continue;
            }
            let a = levels[(y * w + x) as usize] as usize;
            let b = levels[(ny * w + nx) as usize] as usize;
            counts[a][b] += 1;
        }
    }
    Ok(Glcm16::from_counts(counts, offset))
}

/// Contrast, entropy, energy and inverse difference moment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecondOrderStats {
    /// `sum (m - n)^2 P(m, n)`
    pub contrast: f64,
    /// `-sum P(m, n) ln P(m, n)`, with `0 ln 0 = 0`.
    pub entropy: f64,
    /// `sum P(m, n)^2`
    pub energy: f64,
    /// `sum P(m, n) / (1 + (m - n)^2)`
    pub idm: f64,
}

pub fn glcm_features(glcm: &Glcm16) -> Result<SecondOrderStats> {
    if glcm.is_empty() {
        return Err(Error::Empty("co-occurrence matrix has no pairs"));
    }
    let mut s = SecondOrderStats {
        contrast: 0.0,
        entropy: 0.0,
        energy: 0.0,
        idm: 0.0,
    };
    for (m, row) in glcm.probs.iter().enumerate() {
        for (n, &p) in row.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let d2 = (m as f64 - n as f64).powi(2);
            s.contrast += d2 * p;
            s.entropy -= p * p.ln();
            s.energy += p * p;
            s.idm += p / (1.0 + d2);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_grid() {
        let (w, h) = (9, 4);
        let g = compute_glcm(&vec![5; w * h], w, GlcmOffset::default()).unwrap();
        assert_eq!(g.counts[5][5], (w * h - h) as u64);
        assert_eq!(g.pairs, (w * h - h) as u64);
        assert_eq!(g.probs[5][5], 1.0);
        let f = glcm_features(&g).unwrap();
        assert_eq!((f.contrast, f.entropy, f.energy, f.idm), (0.0, 0.0, 1.0, 1.0));
    }

    #[test]
    fn alternating_row() {
        let g = compute_glcm(&[0, 15, 0, 15], 4, GlcmOffset::default()).unwrap();
        assert_eq!(g.counts[0][15], 2);
        assert_eq!(g.counts[15][0], 1);
        assert_eq!(g.pairs, 3);
    }

    #[test]
    fn two_entry_features() {
        let mut counts = [[0u64; 16]; 16];
        counts[0][15] = 1;
        counts[15][0] = 1;
        let f = glcm_features(&Glcm16::from_counts(counts, GlcmOffset::default())).unwrap();
        assert!((f.contrast - 225.0).abs() < 1e-12);
        assert!((f.entropy - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((f.energy - 0.5).abs() < 1e-12);
        assert!((f.idm - 1.0 / 226.0).abs() < 1e-12);
    }

    #[test]
    fn offsets() {
        // 2x2 grid:  a b
        //            c d
        let grid = [1, 2, 3, 4];
        let one = |angle| {
            let g = compute_glcm(&grid, 2, GlcmOffset { distance: 1, angle }).unwrap();
            let mut pairs = Vec::new();
            for m in 0..16 {
                for n in 0..16 {
                    for _ in 0..g.counts[m][n] {
                        pairs.push((m, n));
                    }
                }
            }
            pairs
        };
        assert_eq!(one(0), vec![(1, 2), (3, 4)]);
        assert_eq!(one(45), vec![(3, 2)]);
        assert_eq!(one(90), vec![(3, 1), (4, 2)]);
        assert_eq!(one(135), vec![(4, 1)]);
        assert!(compute_glcm(&grid, 2, GlcmOffset { distance: 1, angle: 30 }).is_err());
        assert!(compute_glcm(&grid, 2, GlcmOffset { distance: 0, angle: 0 }).is_err());
    }

    #[test]
    fn too_small_grid_is_flagged() {
        let g = compute_glcm(&[3, 4, 5], 1, GlcmOffset::default()).unwrap();
        assert!(g.is_empty());
        assert!(glcm_features(&g).is_err());
    }

    #[test]
    fn rejects_levels_out_of_range() {
        assert!(compute_glcm(&[0, 16], 2, GlcmOffset::default()).is_err());
        assert!(compute_glcm(&[0, 1, 2], 2, GlcmOffset::default()).is_err());
    }
}
