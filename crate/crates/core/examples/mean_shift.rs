//! Mean-shift filtering of a speckled phantom: the speckle spread drops
//! while the scaffold border survives.
//!
//!     cargo run --release --example mean_shift

use sonoscaffold::meanshift::{mean_shift_filter_with_stats, MeanShiftParams};
use sonoscaffold::phantom::{generate_phantom, PhantomSpec};

fn spread(px: &[u8]) -> (f64, f64) {
    let n = px.len() as f64;
    let mean = px.iter().map(|&p| p as f64).sum::<f64>() / n;
    let var = px.iter().map(|&p| (p as f64 - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn main() -> sonoscaffold::Result<()> {
    let phantom = generate_phantom(&PhantomSpec {
        width: 240,
        height: 140,
        cx: 119.5,
        cy: 69.5,
        a: 90.0,
        b: 45.0,
        background_mean: 175.0,
        background_noise: 0.2,
        scaffold_mean: 70.0,
        scaffold_noise: 0.2,
        seed: 7,
    })?;
    let params = MeanShiftParams::default();
    let (filtered, stats) = mean_shift_filter_with_stats(&phantom.image, &params)?;
    println!("params: {params:?}");
    println!(
        "longest pixel run: {} steps, {} pixels hit the iteration cap",
        stats.max_iterations_used, stats.unconverged_pixels
    );

    for (name, black) in [("scaffold", true), ("background", false)] {
        let pick = |img: &sonoscaffold::Grayscale8Image| -> Vec<u8> {
            img.pixels()
                .iter()
                .zip(phantom.mask.pixels())
                .filter(|&(_, &m)| (m == 0) == black)
                .map(|(&p, _)| p)
                .collect()
        };
        let (m0, s0) = spread(&pick(&phantom.image));
        let (m1, s1) = spread(&pick(&filtered));
        println!("{name:>10}: mean {m0:6.2} -> {m1:6.2}, sd {s0:6.2} -> {s1:6.2}");
    }
    Ok(())
}
