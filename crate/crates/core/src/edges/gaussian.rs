use super::{check_odd, convolve_separable};
use crate::error::{Error, Result};
use crate::raster::Grayscale8Image;

/// Sampled 1-D Gaussian of odd length `size`, normalized to sum 1.
pub fn gaussian_kernel(size: usize, sigma: f64) -> Result<Vec<f64>> {
    check_odd(size, 1, "gaussian kernel size")?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gaussian sigma must be > 0, got {sigma}"
        )));
    }
    let r = (size / 2) as f64;
    let raw: Vec<f64> = (0..size)
        .map(|i| {
            let d = i as f64 - r;
            (-d * d / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|v| v / sum).collect())
}

/// Separable Gaussian blur with edge replication, rounded half-up back to 8 bits.
pub fn gaussian_blur(image: &Grayscale8Image, size: usize, sigma: f64) -> Result<Grayscale8Image> {
    let taps = gaussian_kernel(size, sigma)?;
    let src: Vec<f64> = image.pixels().iter().map(|&p| p as f64).collect();
    let out = convolve_separable(&src, image.width(), image.height(), &taps, &taps);
    let pixels = out
        .into_iter()
        .map(|v| (v + 0.5).floor().clamp(0.0, 255.0) as u8)
        .collect();
    Grayscale8Image::new(image.width(), image.height(), pixels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = gaussian_kernel(5, 1.4).unwrap();
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(k[0], k[4]);
        assert_eq!(k[1], k[3]);
        assert!(k[2] > k[1] && k[1] > k[0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let img = Grayscale8Image::filled(4, 4, 0);
        assert!(gaussian_blur(&img, 4, 1.0).is_err());
        assert!(gaussian_blur(&img, 5, 0.0).is_err());
    }

    #[test]
    fn constant_image_unchanged() {
        let img = Grayscale8Image::filled(9, 7, 173);
        assert_eq!(gaussian_blur(&img, 5, 1.4).unwrap(), img);
    }

    #[test]
    fn impulse_response_is_sampled_kernel() {
        let mut px = vec![0u8; 81];
        px[40] = 255;
        let img = Grayscale8Image::new(9, 9, px).unwrap();
        let out = gaussian_blur(&img, 5, 1.4).unwrap();
        let k = gaussian_kernel(5, 1.4).unwrap();
        for dy in 0..5 {
            for dx in 0..5 {
                let expected = (255.0 * k[dx] * k[dy] + 0.5).floor() as u8;
                assert_eq!(out.get(2 + dx, 2 + dy), expected);
            }
        }
        assert_eq!(out.get(0, 0), 0);
    }

    #[test]
    fn mass_preserved_for_interior_content() {
        // Direct (non-separable) 2-D convolution as the reference.
        let img = Grayscale8Image::from_fn(24, 24, |x, y| {
            if (8..16).contains(&x) && (6..18).contains(&y) {
                ((x * 13 + y * 7) % 200) as u8 + 40
            } else {
                0
            }
        });
        let k = gaussian_kernel(5, 1.4).unwrap();
        let mut direct_sum = 0.0;
        for y in 0..24isize {
            for x in 0..24isize {
                let mut acc = 0.0;
                for dy in -2..=2isize {
                    for dx in -2..=2isize {
                        acc += k[(dx + 2) as usize] * k[(dy + 2) as usize] * img.get_clamped(x + dx, y + dy) as f64;
                    }
                }
                direct_sum += acc;
            }
        }
        let input_sum: f64 = img.pixels().iter().map(|&p| p as f64).sum();
        assert!((direct_sum - input_sum).abs() < 1e-6);
        let blurred_sum: f64 = gaussian_blur(&img, 5, 1.4)
            .unwrap()
            .pixels()
            .iter()
            .map(|&p| p as f64)
            .sum();
        // Each pixel rounds by at most 0.5.
        assert!((blurred_sum - input_sum).abs() <= 0.5 * 24.0 * 24.0);
        assert!((blurred_sum - input_sum).abs() / input_sum < 0.01);
    }
}
