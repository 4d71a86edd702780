//! Otsu binarization, opening and the black-pixel scaffold area, compared
//! with the phantom's ground truth.
//!
//!     cargo run --release --example otsu_area

use sonoscaffold::meanshift::{mean_shift_filter, MeanShiftParams};
use sonoscaffold::phantom::{generate_phantom, PhantomSpec};
use sonoscaffold::segmentation::{apply_threshold, histogram, morphological_open, otsu_threshold, MorphKernel};

fn main() -> sonoscaffold::Result<()> {
    for (noise, seed) in [(0.0, 0), (0.15, 1), (0.3, 2)] {
        let phantom = generate_phantom(&PhantomSpec {
            width: 200,
            height: 120,
            cx: 99.5,
            cy: 59.5,
            a: 75.0,
            b: 40.0,
            background_mean: 170.0,
            background_noise: noise,
            scaffold_mean: 60.0,
            scaffold_noise: noise,
            seed,
        })?;
        let filtered = mean_shift_filter(&phantom.image, &MeanShiftParams::default())?;
        let otsu = otsu_threshold(&histogram(&filtered))?;
        let binary = apply_threshold(&filtered, otsu.threshold);
        let opened = morphological_open(&binary, MorphKernel::square(3)?, 2)?;
        let truth = phantom.true_area();
        let area = opened.count_black();
        println!(
            "noise {noise:4.2}: T = {:3} (w0 {:.3}, mu0 {:6.2}, mu1 {:6.2})  area {area} px  truth {truth} px  error {:+.2}%",
            otsu.threshold,
            otsu.w0,
            otsu.mu0,
            otsu.mu1,
            (area as f64 - truth as f64) / truth as f64 * 100.0
        );
    }
    Ok(())
}
