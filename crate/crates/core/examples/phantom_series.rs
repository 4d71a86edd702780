//! Generate a degradation series of phantoms with their ground-truth masks
//! and a manifest, the same files `sonoscaffold phantom` writes.
//!
//!     cargo run --example phantom_series [out-dir]

use std::path::PathBuf;

use sonoscaffold::phantom::{generate_series, write_phantom_set, DegradationSeries, PhantomSpec};

fn main() -> sonoscaffold::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sonoscaffold-phantoms"));
    let series = DegradationSeries {
        base: PhantomSpec {
            width: 369,
            height: 200,
            cx: 184.5,
            cy: 99.5,
            a: 150.0,
            b: 80.0,
            background_mean: 170.0,
            background_noise: 0.15,
            scaffold_mean: 80.0,
            scaffold_noise: 0.15,
            seed: 42,
        },
        steps: 4,
        shrink: 0.9,
        mean_increment: 0.0,
        mean_offsets: Some(vec![0.0, -20.0, 10.0, 25.0]),
    };
    let frames = generate_series(&series)?;
    let manifest = write_phantom_set(&frames, &out)?;
    for (entry, frame) in manifest.frames.iter().zip(&frames) {
        println!(
            "{}: a {:6.2} b {:5.2} scaffold mean {:5.1}  true area {:5} px (ellipse {:7.1})",
            entry.label,
            frame.spec.a,
            frame.spec.b,
            frame.spec.scaffold_mean,
            entry.true_area,
            frame.spec.analytic_area()
        );
    }
    println!("wrote {}", out.join("manifest.json").display());
    println!("{}", serde_json::to_string_pretty(&series)?);
    Ok(())
}
