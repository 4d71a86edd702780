use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sonoscaffold::phantom::{write_phantom_set, PhantomRequest};
use sonoscaffold::pipeline::{
    parse_config, run_pipeline, write_outputs, InputEntry, Metric, OutputOptions, PipelineConfig,
};
use sonoscaffold::RoiRect;

#[derive(Parser)]
#[command(
    version,
    about = "Scaffold segmentation and texture reports for ultrasound scan series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the analysis pipeline described by a JSON config.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Also write cropped, filtered, mask and contour images per scan.
        #[arg(long)]
        emit_intermediates: bool,
        /// Write `<metric>.svg` for a report column (repeatable).
        #[arg(long = "chart", value_name = "METRIC")]
        charts: Vec<String>,
    },
    /// Generate phantom scans, ground-truth masks and a manifest.
    Phantom {
        /// JSON phantom spec or degradation series.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn analyze(config: &Path, emit_intermediates: bool, charts: &[String]) -> sonoscaffold::Result<bool> {
    let charts = charts
        .iter()
        .map(|c| c.parse::<Metric>())
        .collect::<Result<Vec<_>, _>>()?;
    let config = parse_config(config)?;
    let report = run_pipeline(&config)?;
    let written = write_outputs(
        &config,
        &report,
        &OutputOptions {
            emit_intermediates,
            charts,
        },
    )?;
    for scan in &report.scans {
        println!(
            "{}: threshold {} area {} px",
            scan.label, scan.threshold, scan.row.area_px
        );
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    for failure in &report.failures {
        eprintln!("error: {}: {}", failure.label, failure.message);
    }
    Ok(report.is_complete())
}

fn phantom(spec: &Path, out: &Path) -> sonoscaffold::Result<()> {
    let text = std::fs::read_to_string(spec).map_err(|e| sonoscaffold::Error::Io {
        path: spec.to_path_buf(),
        source: e,
    })?;
    let request: PhantomRequest = serde_json::from_str(&text)?;
    let frames = request.frames()?;
    let manifest = write_phantom_set(&frames, out)?;

    // A starter config that analyzes the whole frame of every phantom.
    let first = &frames[0].spec;
    let inputs = manifest
        .frames
        .iter()
        .map(|f| InputEntry {
            path: f.image.clone(),
            label: f.label.clone(),
        })
        .collect();
    let mut config = PipelineConfig::new(inputs, RoiRect::new(0, 0, first.width, first.height));
    config.roi_size.w = config.roi_size.w.min(first.width);
    config.roi_size.h = config.roi_size.h.min(first.height);
    let path = out.join("analyze.json");
    std::fs::write(&path, config.to_json_pretty()?).map_err(|e| sonoscaffold::Error::Io {
        path: path.clone(),
        source: e,
    })?;

    for f in &manifest.frames {
        println!("{}: {} (true area {} px)", f.label, f.image.display(), f.true_area);
    }
    println!("wrote {}", out.join("manifest.json").display());
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze {
            config,
            emit_intermediates,
            charts,
        } => analyze(config, *emit_intermediates, charts),
        Command::Phantom { spec, out } => phantom(spec, out).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
