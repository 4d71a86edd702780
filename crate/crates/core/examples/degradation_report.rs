//! End to end: a four-step phantom series through the whole pipeline, with
//! the CSV report, controls and trend charts written to disk.
//!
//!     cargo run --release --example degradation_report [out-dir]

use std::path::PathBuf;

use sonoscaffold::phantom::{generate_series, write_phantom_set, DegradationSeries, PhantomSpec};
use sonoscaffold::pipeline::{
    feature_csv, run_pipeline, write_outputs, ControlsConfig, InputEntry, Metric, OutputOptions, PipelineConfig,
    RoiSize,
};
use sonoscaffold::RoiRect;

fn main() -> sonoscaffold::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sonoscaffold-report"));

    // Scans are 496x369; the scaffold sits inside the top-left 369x200 window.
    let series = DegradationSeries {
        base: PhantomSpec {
            width: 496,
            height: 369,
            cx: 184.5,
            cy: 99.5,
            a: 150.0,
            b: 80.0,
            background_mean: 182.0,
            background_noise: 0.15,
            scaffold_mean: 108.0,
            scaffold_noise: 0.18,
            seed: 2020,
        },
        steps: 4,
        shrink: 0.9,
        mean_increment: 0.0,
        mean_offsets: Some(vec![0.0, -21.0, 7.0, 15.0]),
    };
    let frames = generate_series(&series)?;
    let manifest = write_phantom_set(&frames, &out.join("scans"))?;

    let weeks = ["WEEK 0", "WEEK 4", "WEEK 8", "WEEK 12"];
    let inputs = manifest
        .frames
        .iter()
        .zip(weeks)
        .map(|(f, week)| InputEntry {
            path: out.join("scans").join(&f.image),
            label: week.to_string(),
        })
        .collect();
    let mut config = PipelineConfig::new(inputs, RoiRect::new(0, 0, 369, 200));
    config.controls = Some(ControlsConfig {
        scaffold: None,
        tissue: RoiRect::new(5, 5, 75, 42),
        size: RoiSize { w: 75, h: 42 },
    });
    config.output_dir = out.join("report");

    let report = run_pipeline(&config)?;
    let options = OutputOptions {
        emit_intermediates: true,
        charts: vec![Metric::Area, Metric::Mean, Metric::Cv],
    };
    write_outputs(&config, &report, &options)?;

    print!("{}", String::from_utf8_lossy(&feature_csv(&report.rows())?));
    for (scan, f) in report.scans.iter().zip(&manifest.frames) {
        println!(
            "{}: Otsu T = {}, area {} px vs true {} px",
            scan.label, scan.threshold, scan.row.area_px, f.true_area
        );
    }
    if let Some(c) = &report.controls {
        println!(
            "controls: scaffold mean {:.2}, tissue mean {:.2}",
            c.scaffold.first.mean, c.tissue.first.mean
        );
    }
    println!("report in {}", config.output_dir.display());
    Ok(())
}
