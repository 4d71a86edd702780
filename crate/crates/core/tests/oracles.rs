//! Library results checked against independent test-side computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sonoscaffold::edges::{canny, CannyParams};
use sonoscaffold::meanshift::{mean_shift_filter, MeanShiftParams};
use sonoscaffold::phantom::{generate_phantom, PhantomSpec};
use sonoscaffold::texture::{glcm_features, savitzky_golay, Glcm16, GlcmOffset, SmoothingParams};
use sonoscaffold::{BinaryMask, Grayscale8Image};

/// Straightforward per-pixel mean-shift: flat kernel, square window clipped
/// to the image around the rounded current position, range gate on the
/// current gray, Euclidean stopping rule, half-up rounding.
fn reference_mean_shift(img: &Grayscale8Image, hs: usize, hr: f64, max_iter: u32, eps: f64) -> Vec<u8> {
    let (w, h) = (img.width() as i64, img.height() as i64);
    let mut out = Vec::new();
    for y0 in 0..h {
        for x0 in 0..w {
            let mut p = [x0 as f64, y0 as f64, img.get(x0 as usize, y0 as usize) as f64];
            for _ in 0..max_iter {
                let cx = (p[0].round() as i64).clamp(0, w - 1);
                let cy = (p[1].round() as i64).clamp(0, h - 1);
                let mut acc = [0.0; 3];
                let mut n = 0.0;
                for y in 0..h {
                    for x in 0..w {
                        let g = img.get(x as usize, y as usize) as f64;
                        let inside = (x - cx).abs() <= hs as i64 && (y - cy).abs() <= hs as i64;
                        if inside && (g - p[2]).abs() <= hr {
                            acc[0] += x as f64;
                            acc[1] += y as f64;
                            acc[2] += g;
                            n += 1.0;
                        }
                    }
                }
                if n == 0.0 {
                    break;
                }
                let next = [acc[0] / n, acc[1] / n, acc[2] / n];
                let step = ((next[0] - p[0]).powi(2) + (next[1] - p[1]).powi(2) + (next[2] - p[2]).powi(2)).sqrt();
                p = next;
                if step <= eps {
                    break;
                }
            }
            out.push((p[2] + 0.5).floor().clamp(0.0, 255.0) as u8);
        }
    }
    out
}

#[test]
fn mean_shift_half_planes_stay_apart() {
    let img = Grayscale8Image::from_fn(30, 20, |x, _| if x < 13 { 10 } else { 240 });
    let params = MeanShiftParams::default();
    let out = mean_shift_filter(&img, &params).unwrap();
    assert_eq!(out, img);
    let oracle = reference_mean_shift(&img, 5, 100.0, 5, 1.0);
    assert_eq!(out.pixels(), &oracle[..]);
}

#[test]
fn mean_shift_matches_reference_on_noise() {
    for seed in 0..6u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (w, h) = (rng.random_range(5..18), rng.random_range(5..14));
        let img = Grayscale8Image::from_fn(w, h, |x, _| {
            let base = if x < w / 2 { 60.0 } else { 170.0 };
            (base + rng.random_range(-40.0..40.0)) as u8
        });
        let hs = rng.random_range(1..4);
        let hr = rng.random_range(20.0..120.0);
        let params = MeanShiftParams {
            spatial_radius: hs,
            range_radius: hr,
            max_iterations: rng.random_range(1..8),
            epsilon: rng.random_range(0.0..2.0),
        };
        let out = mean_shift_filter(&img, &params).unwrap();
        let oracle = reference_mean_shift(&img, hs, hr, params.max_iterations, params.epsilon);
        assert_eq!(out.pixels(), &oracle[..], "seed {seed}");
    }
}

fn variance(px: &[u8]) -> f64 {
    let n = px.len() as f64;
    let m = px.iter().map(|&p| p as f64).sum::<f64>() / n;
    px.iter().map(|&p| (p as f64 - m).powi(2)).sum::<f64>() / n
}

#[test]
fn mean_shift_reduces_speckle_variance() {
    for seed in 0..10 {
        let spec = PhantomSpec {
            width: 80,
            height: 60,
            cx: 40.0,
            cy: 30.0,
            a: 25.0,
            b: 15.0,
            background_mean: 150.0,
            background_noise: 0.2,
            scaffold_mean: 60.0,
            scaffold_noise: 0.2,
            seed,
        };
        let p = generate_phantom(&spec).unwrap();
        let out = mean_shift_filter(&p.image, &MeanShiftParams::default()).unwrap();
        assert!(variance(out.pixels()) <= variance(p.image.pixels()), "seed {seed}");
    }
}

#[test]
fn uniform_glcm_features() {
    let g = Glcm16::from_counts([[3; 16]; 16], GlcmOffset::default());
    let s = glcm_features(&g).unwrap();
    let mut idm = 0.0;
    let mut contrast = 0.0;
    for m in 0..16 {
        for n in 0..16 {
            let d = (m as f64 - n as f64).powi(2);
            contrast += d / 256.0;
            idm += 1.0 / (1.0 + d) / 256.0;
        }
    }
    assert!((contrast - 42.5).abs() < 1e-12);
    assert!((s.contrast - 42.5).abs() < 1e-12);
    assert!((s.entropy - 256f64.ln()).abs() < 1e-12);
    assert!((s.energy - 1.0 / 256.0).abs() < 1e-15);
    assert!((s.idm - idm).abs() < 1e-12);
}

#[test]
fn phantom_mask_is_the_rasterized_ellipse() {
    let spec = PhantomSpec {
        width: 90,
        height: 70,
        cx: 44.3,
        cy: 35.8,
        a: 30.5,
        b: 21.25,
        background_mean: 200.0,
        background_noise: 0.0,
        scaffold_mean: 40.0,
        scaffold_noise: 0.0,
        seed: 0,
    };
    let p = generate_phantom(&spec).unwrap();
    let mut count = 0;
    for y in 0..70 {
        for x in 0..90 {
            let inside = ((x as f64 - 44.3) / 30.5).powi(2) + ((y as f64 - 35.8) / 21.25).powi(2) <= 1.0;
            count += inside as usize;
            assert_eq!(p.mask.is_black(x, y), inside);
            assert_eq!(p.image.get(x, y), if inside { 40 } else { 200 });
        }
    }
    assert_eq!(p.true_area(), count);
    assert!((count as f64 - spec.analytic_area()).abs() < 4.0 * 30.5);
}

#[test]
fn savgol_suppresses_noise_about_a_quadratic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let truth: Vec<f64> = (0..80).map(|i| 0.05 * (i as f64 - 40.0).powi(2) - 3.0).collect();
    let noisy: Vec<f64> = truth.iter().map(|t| t + rng.random_range(-5.0..5.0)).collect();
    let smooth = savitzky_golay(&noisy, &SmoothingParams::default()).unwrap();
    let err = |s: &[f64]| s.iter().zip(&truth).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    assert!(err(&smooth) < err(&noisy));
}

/// Connected components of white pixels under 8-connectivity.
fn components(m: &BinaryMask) -> usize {
    let (w, h) = (m.width(), m.height());
    let mut seen = vec![false; w * h];
    let mut n = 0;
    for start in 0..w * h {
        if seen[start] || m.pixels()[start] != 255 {
            continue;
        }
        n += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            let (x, y) = ((i % w) as i64, (i / w) as i64);
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let (u, v) = (x + dx, y + dy);
                    if u < 0 || v < 0 || u >= w as i64 || v >= h as i64 {
                        continue;
                    }
                    let j = v as usize * w + u as usize;
                    if !seen[j] && m.pixels()[j] == 255 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    n
}

#[test]
fn disk_contour_is_a_closed_thin_ring() {
    let (cx, cy, r) = (40.0, 35.0, 20.0);
    let spec = PhantomSpec {
        width: 80,
        height: 70,
        cx,
        cy,
        a: r,
        b: r,
        background_mean: 255.0,
        background_noise: 0.0,
        scaffold_mean: 0.0,
        scaffold_noise: 0.0,
        seed: 0,
    };
    let p = generate_phantom(&spec).unwrap();
    let edges = canny(&p.mask.to_image(), &CannyParams::default()).unwrap();
    let ring: Vec<(f64, f64)> = (0..70)
        .flat_map(|y| (0..80).map(move |x| (x, y)))
        .filter(|&(x, y)| edges.get(x, y) == 255)
        .map(|(x, y)| (x as f64, y as f64))
        .collect();
    assert!(!ring.is_empty());
    for &(x, y) in &ring {
        let d = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
        assert!((d - r).abs() <= 2.0, "edge pixel ({x}, {y}) is {d:.2} from the centre");
    }
    assert_eq!(components(&edges), 1);

    // Closed: a 4-connected flood from the centre never reaches the border.
    let mut inside = vec![false; 80 * 70];
    let mut stack = vec![(cx as usize, cy as usize)];
    inside[cy as usize * 80 + cx as usize] = true;
    while let Some((x, y)) = stack.pop() {
        assert!(
            x > 0 && y > 0 && x < 79 && y < 69,
            "interior leaks to the border at ({x}, {y})"
        );
        for (u, v) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if !inside[v * 80 + u] && edges.get(u, v) != 255 {
                inside[v * 80 + u] = true;
                stack.push((u, v));
            }
        }
    }

    // Thin: no 2x2 block is entirely edge.
    for y in 0..69 {
        for x in 0..79 {
            let block = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)];
            assert!(
                block.iter().any(|&(u, v)| edges.get(u, v) != 255),
                "thick at ({x}, {y})"
            );
        }
    }
    // Roughly a circumference worth of pixels.
    assert!(ring.len() as f64 > 2.0 * std::f64::consts::PI * r * 0.7);
}
