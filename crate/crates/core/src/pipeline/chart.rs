//! Minimal self-contained SVG line charts of one report column.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::run::FeatureRow;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Area,
    Mean,
    Sd,
    Cv,
    Contrast,
    Entropy,
    Energy,
    Idm,
}

impl Metric {
    pub const ALL: [Metric; 8] = [
        Metric::Area,
        Metric::Mean,
        Metric::Sd,
        Metric::Cv,
        Metric::Contrast,
        Metric::Entropy,
        Metric::Energy,
        Metric::Idm,
    ];

    /// CSV column name.
    pub fn column(&self) -> &'static str {
        match self {
            Metric::Area => "area_px",
            Metric::Mean => "mean",
            Metric::Sd => "sd",
            Metric::Cv => "cv_pct",
            Metric::Contrast => "contrast",
            Metric::Entropy => "entropy",
            Metric::Energy => "energy",
            Metric::Idm => "idm",
        }
    }

    fn axis_label(&self) -> &'static str {
        match self {
            Metric::Area => "Scaffold area (px)",
            Metric::Mean => "ROI mean gray",
            Metric::Sd => "ROI standard deviation",
            Metric::Cv => "Coefficient of variation (%)",
            Metric::Contrast => "GLCM contrast",
            Metric::Entropy => "GLCM entropy",
            Metric::Energy => "GLCM energy",
            Metric::Idm => "GLCM inverse difference moment",
        }
    }

    pub fn value(&self, row: &FeatureRow) -> f64 {
        match self {
            Metric::Area => row.area_px as f64,
            Metric::Mean => row.mean,
            Metric::Sd => row.sd,
            Metric::Cv => row.cv_pct,
            Metric::Contrast => row.contrast,
            Metric::Entropy => row.entropy,
            Metric::Energy => row.energy,
            Metric::Idm => row.idm,
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "area" => Ok(Metric::Area),
            "cv" => Ok(Metric::Cv),
            _ => Metric::ALL
                .into_iter()
                .find(|m| m.column() == s)
                .ok_or_else(|| Error::UnknownMetric(s.to_string())),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

/// Renders the chart as SVG text. Points keep input order; consecutive
/// points are joined by one `<line class="segment">` each.
pub fn trend_chart_svg(rows: &[FeatureRow], metric: Metric) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Empty("no rows to chart"));
    }
    let values: Vec<f64> = rows.iter().map(|r| metric.value(r)).collect();
    let (mut lo, mut hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |i: usize| {
        if rows.len() == 1 {
            LEFT + plot_w / 2.0
        } else {
            LEFT + plot_w * i as f64 / (rows.len() - 1) as f64
        }
    };
    let y_of = |v: f64| TOP + plot_h * (1.0 - (v - lo) / (hi - lo));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<title>{}</title>"#, escape(metric.axis_label()));
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let (x0, y0, x1, y1) = (LEFT, HEIGHT - BOTTOM, WIDTH - RIGHT, TOP);
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );
    for v in [lo, (lo + hi) / 2.0, hi] {
        let _ = writeln!(
            svg,
            r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="end">{:.2}</text>"#,
            LEFT - 6.0,
            y_of(v) + 4.0,
            v
        );
    }
    let _ = writeln!(
        svg,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle">Time point</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text class="axis-label" x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(metric.axis_label())
    );
    for (i, row) in rows.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            x_of(i),
            HEIGHT - BOTTOM + 18.0,
            escape(&row.time)
        );
    }
    for i in 1..values.len() {
        let _ = writeln!(
            svg,
            r##"<line class="segment" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f5fa8" stroke-width="2"/>"##,
            x_of(i - 1),
            y_of(values[i - 1]),
            x_of(i),
            y_of(values[i])
        );
    }
    for (i, &v) in values.iter().enumerate() {
        let _ = writeln!(
            svg,
            r##"<circle class="point" cx="{:.2}" cy="{:.2}" r="4" fill="#1f5fa8"/>"##,
            x_of(i),
            y_of(v)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_trend_chart(rows: &[FeatureRow], metric: &str, path: impl AsRef<Path>) -> Result<()> {
    let metric: Metric = metric.parse()?;
    let path = path.as_ref();
    let svg = trend_chart_svg(rows, metric)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
