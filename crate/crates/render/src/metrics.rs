//! Pixel-space similarity: MSE, PSNR and SSIM, plus per-frame averaging
//! for animations.

use crate::image::{RasterImage, RenderOutcome};
use crate::Error;

/// PSNR reported for identical images.
pub const PSNR_CAP: f64 = 100.0;

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const SSIM_C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Ssim,
    Psnr,
    Mse,
}

fn check_dims(a: &RasterImage, b: &RasterImage) -> Result<(), Error> {
    if (a.width, a.height) != (b.width, b.height) {
        return Err(Error::DimensionMismatch { left: (a.width, a.height), right: (b.width, b.height) });
    }
    Ok(())
}

/// Mean squared error over every RGB sample on the 0..=255 scale.
pub fn mse(a: &RasterImage, b: &RasterImage) -> Result<f64, Error> {
    check_dims(a, b)?;
    if a.data.is_empty() {
        return Ok(0.0);
    }
    let sum: u64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.data.len() as f64)
}

/// `10 * log10(255^2 / mse)`, clamped to `[0, 100]`; identical images give
/// exactly 100.
pub fn psnr(a: &RasterImage, b: &RasterImage) -> Result<f64, Error> {
    Ok(psnr_from_mse(mse(a, b)?))
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        return PSNR_CAP;
    }
    (10.0 * (255.0 * 255.0 / mse).log10()).clamp(0.0, PSNR_CAP)
}

fn luma(img: &RasterImage) -> Vec<f64> {
    img.data.chunks_exact(3).map(|p| 0.299 * p[0] as f64 + 0.587 * p[1] as f64 + 0.114 * p[2] as f64).collect()
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut k = [0.0; SSIM_WINDOW];
    let half = (SSIM_WINDOW / 2) as f64;
    for (i, w) in k.iter_mut().enumerate() {
        let x = i as f64 - half;
        *w = (-x * x / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let total: f64 = k.iter().sum();
    k.iter_mut().for_each(|w| *w /= total);
    k
}

/// Separable Gaussian filter keeping only windows fully inside the image.
fn filter_valid(src: &[f64], width: usize, height: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let out_w = width - SSIM_WINDOW + 1;
    let out_h = height - SSIM_WINDOW + 1;
    let mut rows = vec![0.0; out_w * height];
    for y in 0..height {
        let line = &src[y * width..(y + 1) * width];
        for x in 0..out_w {
            let mut acc = 0.0;
            for (i, w) in k.iter().enumerate() {
                acc += w * line[x + i];
            }
            rows[y * out_w + x] = acc;
        }
    }
    let mut out = vec![0.0; out_w * out_h];
    for y in 0..out_h {
        for x in 0..out_w {
            let mut acc = 0.0;
            for (i, w) in k.iter().enumerate() {
                acc += w * rows[(y + i) * out_w + x];
            }
            out[y * out_w + x] = acc;
        }
    }
    out
}

/// Mean structural similarity of the BT.601 luma planes, using an 11×11
/// Gaussian window (σ = 1.5) over all fully contained window positions.
pub fn ssim(a: &RasterImage, b: &RasterImage) -> Result<f64, Error> {
    check_dims(a, b)?;
    let (w, h) = (a.width as usize, a.height as usize);
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::TooSmall { width: a.width, height: a.height, min: SSIM_WINDOW as u32 });
    }
    let x = luma(a);
    let y = luma(b);
    let k = gaussian_kernel();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p * q).collect();

    let mu_x = filter_valid(&x, w, h, &k);
    let mu_y = filter_valid(&y, w, h, &k);
    let e_xx = filter_valid(&xx, w, h, &k);
    let e_yy = filter_valid(&yy, w, h, &k);
    let e_xy = filter_valid(&xy, w, h, &k);

    let mut total = 0.0;
    for i in 0..mu_x.len() {
        let (mx, my) = (mu_x[i], mu_y[i]);
        let mxy = mx * my;
        let mm = mx * mx + my * my;
        let var_sum = (e_xx[i] + e_yy[i]) - mm;
        let cov = e_xy[i] - mxy;
        let num = (2.0 * mxy + SSIM_C1) * (2.0 * cov + SSIM_C2);
        let den = (mm + SSIM_C1) * (var_sum + SSIM_C2);
        total += num / den;
    }
    Ok(total / mu_x.len() as f64)
}

pub fn image_metric(a: &RasterImage, b: &RasterImage, metric: Metric) -> Result<f64, Error> {
    match metric {
        Metric::Ssim => ssim(a, b),
        Metric::Psnr => psnr(a, b),
        Metric::Mse => mse(a, b),
    }
}

/// Arithmetic mean of per-frame scores. Penalized frames are scored through
/// their black images like any other frame.
pub fn video_metric(frames_a: &[RenderOutcome], frames_b: &[RenderOutcome], metric: Metric) -> Result<f64, Error> {
    if frames_a.len() != frames_b.len() {
        return Err(Error::LengthMismatch { left: frames_a.len(), right: frames_b.len() });
    }
    if frames_a.is_empty() {
        return Err(Error::LengthMismatch { left: 0, right: 0 });
    }
    let mut total = 0.0;
    for (a, b) in frames_a.iter().zip(frames_b) {
        total += image_metric(a.image(), b.image(), metric)?;
    }
    Ok(total / frames_a.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(w: u32, h: u32, v: u8) -> RasterImage {
        RasterImage::filled(w, h, [v, v, v])
    }

    #[test]
    fn mse_examples() {
        let black = RasterImage::black(4, 4);
        let white = RasterImage::white(4, 4);
        assert_eq!(mse(&black, &black).unwrap(), 0.0);
        assert_eq!(mse(&black, &white).unwrap(), 65025.0);
        let mut one = RasterImage::black(2, 2);
        one.set_pixel(1, 1, [255, 0, 0]);
        assert_eq!(mse(&one, &RasterImage::black(2, 2)).unwrap(), 65025.0 / 12.0);
    }

    #[test]
    fn psnr_examples() {
        let black = RasterImage::black(16, 16);
        let white = RasterImage::white(16, 16);
        assert_eq!(psnr(&black, &white).unwrap(), 0.0);
        assert_eq!(psnr(&white, &white).unwrap(), 100.0);
        assert!((psnr_from_mse(65025.0 / 100.0) - 20.0).abs() < 1e-12);
    }

    #[test]
    fn ssim_examples() {
        let a = gray(20, 20, 90);
        assert_eq!(ssim(&a, &a).unwrap(), 1.0);
        let black = RasterImage::black(20, 20);
        let white = RasterImage::white(20, 20);
        let s = ssim(&black, &white).unwrap();
        // constant images: (2*0*255 + C1) / (0 + 255^2 + C1)
        let expected = SSIM_C1 / (255.0 * 255.0 + SSIM_C1);
        assert!((s - expected).abs() < 1e-12, "{s}");
        assert!(s < 0.01);
    }

    #[test]
    fn ssim_errors() {
        let a = gray(10, 20, 0);
        assert!(matches!(ssim(&a, &a), Err(Error::TooSmall { .. })));
        assert!(matches!(ssim(&gray(12, 12, 0), &gray(13, 12, 0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn video_metric_examples() {
        let white = RenderOutcome::Ok(RasterImage::white(16, 16));
        let black = RenderOutcome::penalty(16);
        let same = vec![white.clone(); 4];
        assert_eq!(video_metric(&same, &same, Metric::Psnr).unwrap(), 100.0);
        let mixed = vec![white.clone(), white.clone(), black.clone(), black];
        assert_eq!(video_metric(&same, &mixed, Metric::Psnr).unwrap(), 50.0);
        assert_eq!(video_metric(&same, &same, Metric::Ssim).unwrap(), 1.0);
        assert!(matches!(video_metric(&same, &same[..2], Metric::Mse), Err(Error::LengthMismatch { .. })));
    }
}
