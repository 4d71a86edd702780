//! Write a scan as PGM and PNG, read it back, and crop a window out of it.
//!
//!     cargo run --example raster_io [out-dir]

use std::path::PathBuf;

use sonoscaffold::raster::{crop, extract_roi, load_image, save_image};
use sonoscaffold::{Grayscale8Image, RoiRect};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sonoscaffold-raster-io"));
    std::fs::create_dir_all(&out)?;

    // A 496x369 diagonal gradient, the size of the scans this crate was built for.
    let scan = Grayscale8Image::from_fn(496, 369, |x, y| ((x + y) / 4 % 256) as u8);
    for name in ["scan.pgm", "scan.png"] {
        let path = out.join(name);
        save_image(&scan, &path)?;
        let back = load_image(&path)?;
        println!(
            "{}: {}x{}, round trip {}",
            path.display(),
            back.width(),
            back.height(),
            if back == scan { "exact" } else { "LOSSY" }
        );
    }

    let window = crop(&scan, RoiRect::new(0, 0, 369, 200))?;
    println!("manual crop: {}x{}", window.width(), window.height());
    let roi = extract_roi(&window, RoiRect::new(117, 71, 135, 58))?;
    println!("135x58 ROI holds {} pixels", roi.len());
    Ok(())
}
