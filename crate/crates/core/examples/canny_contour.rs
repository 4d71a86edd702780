//! Canny contour of a segmented scaffold mask, written as PGM images.
//!
//!     cargo run --release --example canny_contour [out-dir]

use std::path::PathBuf;

use sonoscaffold::edges::{canny_stages, CannyParams};
use sonoscaffold::phantom::{generate_phantom, PhantomSpec};
use sonoscaffold::raster::save_image;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sonoscaffold-canny"));
    std::fs::create_dir_all(&out)?;

    let phantom = generate_phantom(&PhantomSpec {
        width: 160,
        height: 100,
        cx: 79.5,
        cy: 49.5,
        a: 60.0,
        b: 32.0,
        background_mean: 255.0,
        background_noise: 0.0,
        scaffold_mean: 0.0,
        scaffold_noise: 0.0,
        seed: 0,
    })?;
    let mask = phantom.mask.to_image();
    let stages = canny_stages(&mask, &CannyParams::default())?;
    let peak = stages.gradient.magnitude.iter().cloned().fold(0.0, f64::max);
    let kept = stages.suppressed.magnitude.iter().filter(|&&m| m > 0.0).count();
    println!("peak gradient {peak:.1}, {kept} ridge pixels after suppression");
    println!(
        "{} contour pixels for a scaffold of {} px",
        stages.edges.count_white(),
        phantom.true_area()
    );

    save_image(&mask, out.join("mask.pgm"))?;
    save_image(&stages.blurred, out.join("blurred.pgm"))?;
    save_image(&stages.edges.to_image(), out.join("contour.pgm"))?;
    println!("images in {}", out.display());
    Ok(())
}
