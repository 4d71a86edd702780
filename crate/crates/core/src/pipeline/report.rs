//! CSV reports. Floats are printed with two decimals, areas as integers.

use std::path::Path;

use super::run::{ControlReport, FeatureRow, RoiFeatures};
use crate::error::{Error, Result};

pub const FEATURE_HEADER: [&str; 9] = [
    "time", "area_px", "mean", "sd", "cv_pct", "contrast", "entropy", "energy", "idm",
];

fn f2(v: f64) -> String {
    format!("{v:.2}")
}

fn feature_record(row: &FeatureRow) -> [String; 9] {
    [
        row.time.clone(),
        row.area_px.to_string(),
        f2(row.mean),
        f2(row.sd),
        f2(row.cv_pct),
        f2(row.contrast),
        f2(row.entropy),
        f2(row.energy),
        f2(row.idm),
    ]
}

/// Serializes rows to CSV text.
pub fn feature_csv(rows: &[FeatureRow]) -> Result<Vec<u8>> {
    if rows.is_empty() {
        return Err(Error::Empty("no feature rows to write"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FEATURE_HEADER)?;
    for row in rows {
        w.write_record(feature_record(row))?;
    }
    w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
}

pub fn emit_csv(rows: &[FeatureRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = feature_csv(rows)?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Parses a file written by [`emit_csv`].
pub fn read_feature_csv(path: impl AsRef<Path>) -> Result<Vec<FeatureRow>> {
    let path = path.as_ref();
    let mut reader = csv::Reader::from_path(path)?;
    let header = reader.headers()?.clone();
    if header.iter().ne(FEATURE_HEADER) {
        return Err(Error::InvalidParameter(format!(
            "unexpected CSV header in {}",
            path.display()
        )));
    }
    reader
        .deserialize::<FeatureRow>()
        .map(|r| r.map_err(Error::from))
        .collect()
}

/// `controls.csv`: one line per control region.
pub fn controls_csv(report: &ControlReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "region", "x", "y", "w", "h", "mean", "sd", "cv_pct", "contrast", "entropy", "energy", "idm",
    ])?;
    let mut line = |name: &str, f: &RoiFeatures| -> Result<()> {
        w.write_record([
            name.to_string(),
            f.rect.x.to_string(),
            f.rect.y.to_string(),
            f.rect.w.to_string(),
            f.rect.h.to_string(),
            f2(f.first.mean),
            f2(f.first.sd),
            f2(f.first.cv),
            f2(f.second.contrast),
            f2(f.second.entropy),
            f2(f.second.energy),
            f2(f.second.idm),
        ])?;
        Ok(())
    };
    line("scaffold", &report.scaffold)?;
    line("tissue", &report.tissue)?;
    w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
}

/// `distribution.csv`: raw and smoothed gray-value curves of both controls.
pub fn distribution_csv(report: &ControlReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["gray", "scaffold", "scaffold_smoothed", "tissue", "tissue_smoothed"])?;
    let (s, t) = (&report.scaffold_distribution, &report.tissue_distribution);
    for g in 0..256 {
        w.write_record([
            g.to_string(),
            format!("{}", s.counts[g]),
            format!("{:.4}", s.smoothed[g]),
            format!("{}", t.counts[g]),
            format!("{:.4}", t.smoothed[g]),
        ])?;
    }
    w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn week0() -> FeatureRow {
        FeatureRow {
            time: "WEEK 0".into(),
            area_px: 5120,
            mean: 108.69,
            sd: 20.15,
            cv_pct: 18.54,
            contrast: 4.38,
            entropy: 3.97,
            energy: 0.02,
            idm: 0.43,
        }
    }

    #[test]
    fn published_row_serializes_with_its_decimals() {
        let text = String::from_utf8(feature_csv(&[week0()]).unwrap()).unwrap();
        assert_eq!(
            text,
            "time,area_px,mean,sd,cv_pct,contrast,entropy,energy,idm\n\
             WEEK 0,5120,108.69,20.15,18.54,4.38,3.97,0.02,0.43\n"
        );
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn labels_with_commas_are_quoted() {
        let row = FeatureRow {
            time: "day 3, post-op".into(),
            ..week0()
        };
        let text = String::from_utf8(feature_csv(&[row]).unwrap()).unwrap();
        assert!(text.contains("\"day 3, post-op\""));
    }

    #[test]
    fn round_trip_within_precision() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let rows = vec![
            week0(),
            FeatureRow {
                time: "WEEK 4".into(),
                area_px: 4000,
                mean: 87.0712,
                sd: 21.1599,
                cv_pct: 24.3,
                contrast: 5.6449,
                entropy: 4.2251,
                energy: 0.0213,
                idm: 0.4012,
            },
        ];
        emit_csv(&rows, &path).unwrap();
        let back = read_feature_csv(&path).unwrap();
        assert_eq!(back.len(), 2);
        for (a, b) in rows.iter().zip(&back) {
            assert_eq!(a.time, b.time);
            assert_eq!(a.area_px, b.area_px);
            for (x, y) in [
                (a.mean, b.mean),
                (a.sd, b.sd),
                (a.cv_pct, b.cv_pct),
                (a.contrast, b.contrast),
                (a.entropy, b.entropy),
                (a.energy, b.energy),
                (a.idm, b.idm),
            ] {
                assert!((x - y).abs() <= 0.005 + 1e-12, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn empty_rows_rejected() {
        assert!(feature_csv(&[]).is_err());
    }
}
