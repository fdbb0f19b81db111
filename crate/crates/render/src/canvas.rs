//! Premultiplied RGBA float canvas, paint sources and compositing.

use svgbench_core::TransformMatrix;

use crate::image::RasterImage;
use crate::raster::Coverage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spread {
    Pad,
    Reflect,
    Repeat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GradientKind {
    Linear { x1: f64, y1: f64, x2: f64, y2: f64 },
    Radial { cx: f64, cy: f64, r: f64, fx: f64, fy: f64, fr: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub kind: GradientKind,
    /// Offsets in `[0, 1]`, non-decreasing, with straight RGBA colors.
    pub stops: Vec<(f64, [f64; 4])>,
    pub spread: Spread,
    /// Maps device pixel coordinates into the gradient's coordinate system.
    pub device_to_gradient: TransformMatrix,
}

fn premultiply(c: [f64; 4]) -> [f32; 4] {
    let a = c[3];
    [(c[0] * a) as f32, (c[1] * a) as f32, (c[2] * a) as f32, a as f32]
}

impl Gradient {
    fn parameter(&self, x: f64, y: f64) -> Option<f64> {
        match self.kind {
            GradientKind::Linear { x1, y1, x2, y2 } => {
                let (dx, dy) = (x2 - x1, y2 - y1);
                let len2 = dx * dx + dy * dy;
                if len2 == 0.0 {
                    return Some(1.0);
                }
                Some(((x - x1) * dx + (y - y1) * dy) / len2)
            }
            GradientKind::Radial { cx, cy, r, fx, fy, fr } => {
                // largest t with |p - c(t)| = r(t), c(t) = f + t (c - f), r(t) = fr + t (r - fr)
                let (cdx, cdy) = (cx - fx, cy - fy);
                let (pdx, pdy) = (x - fx, y - fy);
                let dr = r - fr;
                let a = cdx * cdx + cdy * cdy - dr * dr;
                let b = pdx * cdx + pdy * cdy + fr * dr;
                let c = pdx * pdx + pdy * pdy - fr * fr;
                if a.abs() < 1e-12 {
                    if b == 0.0 {
                        return None;
                    }
                    let t = c / (2.0 * b);
                    return (fr + t * dr >= 0.0).then_some(t);
                }
                let disc = b * b - a * c;
                if disc < 0.0 {
                    return None;
                }
                let sq = disc.sqrt();
                let t1 = (b + sq) / a;
                let t2 = (b - sq) / a;
                let (hi, lo) = if t1 > t2 { (t1, t2) } else { (t2, t1) };
                if fr + hi * dr >= 0.0 {
                    Some(hi)
                } else if fr + lo * dr >= 0.0 {
                    Some(lo)
                } else {
                    None
                }
            }
        }
    }

    fn color_for(&self, t: f64) -> [f64; 4] {
        let t = match self.spread {
            Spread::Pad => t.clamp(0.0, 1.0),
            Spread::Repeat => t.rem_euclid(1.0),
            Spread::Reflect => {
                let m = t.rem_euclid(2.0);
                if m > 1.0 {
                    2.0 - m
                } else {
                    m
                }
            }
        };
        let stops = &self.stops;
        if t <= stops[0].0 {
            return stops[0].1;
        }
        for w in stops.windows(2) {
            let ((o0, c0), (o1, c1)) = (w[0], w[1]);
            if t <= o1 {
                if o1 <= o0 {
                    return c1;
                }
                let f = (t - o0) / (o1 - o0);
                return [
                    c0[0] + (c1[0] - c0[0]) * f,
                    c0[1] + (c1[1] - c0[1]) * f,
                    c0[2] + (c1[2] - c0[2]) * f,
                    c0[3] + (c1[3] - c0[3]) * f,
                ];
            }
        }
        stops[stops.len() - 1].1
    }

    pub fn color_at(&self, px: f64, py: f64) -> [f32; 4] {
        let (x, y) = self.device_to_gradient.apply(px, py);
        match self.parameter(x, y) {
            Some(t) => premultiply(self.color_for(t)),
            None => [0.0; 4],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Solid([f32; 4]),
    Gradient(Box<Gradient>),
}

impl Source {
    pub fn solid(c: [f64; 4]) -> Source {
        Source::Solid(premultiply(c))
    }
}

#[derive(Debug, Clone)]
pub struct Canvas {
    pub width: usize,
    pub height: usize,
    pub px: Vec<[f32; 4]>,
}

fn over(dst: &mut [f32; 4], src: [f32; 4]) {
    let k = 1.0 - src[3];
    for i in 0..4 {
        dst[i] = src[i] + dst[i] * k;
    }
}

impl Canvas {
    pub fn new(width: usize, height: usize) -> Canvas {
        Canvas { width, height, px: vec![[0.0; 4]; width * height] }
    }

    /// Paints `source` through `cov`, further attenuated by an optional
    /// full-canvas clip mask and a constant opacity.
    pub fn fill(&mut self, cov: &Coverage, clip: Option<&[f32]>, source: &Source, opacity: f32) {
        for y in 0..cov.height {
            let cy = cov.y0 + y;
            for x in 0..cov.width {
                let mut a = cov.data[y * cov.width + x];
                if a == 0.0 {
                    continue;
                }
                let cx = cov.x0 + x;
                let i = cy * self.width + cx;
                if let Some(m) = clip {
                    a *= m[i];
                    if a == 0.0 {
                        continue;
                    }
                }
                a *= opacity;
                let color = match source {
                    Source::Solid(c) => *c,
                    Source::Gradient(g) => g.color_at(cx as f64 + 0.5, cy as f64 + 0.5),
                };
                over(&mut self.px[i], [color[0] * a, color[1] * a, color[2] * a, color[3] * a]);
            }
        }
    }

    /// Composites a same-sized layer with group opacity and an optional mask.
    pub fn composite(&mut self, layer: &Canvas, opacity: f32, mask: Option<&[f32]>) {
        for (i, src) in layer.px.iter().enumerate() {
            if src[3] == 0.0 && src[0] == 0.0 && src[1] == 0.0 && src[2] == 0.0 {
                continue;
            }
            let mut k = opacity;
            if let Some(m) = mask {
                k *= m[i];
            }
            if k == 0.0 {
                continue;
            }
            over(&mut self.px[i], [src[0] * k, src[1] * k, src[2] * k, src[3] * k]);
        }
    }

    /// Luminance of premultiplied color, used as a mask value.
    pub fn luminance_mask(&self) -> Vec<f32> {
        self.px.iter().map(|p| (0.2125 * p[0] + 0.7154 * p[1] + 0.0721 * p[2]).clamp(0.0, 1.0)).collect()
    }

    /// Separable Gaussian blur with standard deviations in pixels.
    pub fn blur(&mut self, sigma_x: f64, sigma_y: f64) {
        if sigma_x > 0.0 {
            let k = kernel(sigma_x);
            self.px = convolve(&self.px, self.width, self.height, &k, true);
        }
        if sigma_y > 0.0 {
            let k = kernel(sigma_y);
            self.px = convolve(&self.px, self.width, self.height, &k, false);
        }
    }

    /// Composites over opaque white and quantizes to 8-bit RGB.
    pub fn to_image(&self) -> RasterImage {
        let mut data = Vec::with_capacity(self.width * self.height * 3);
        for p in &self.px {
            let bg = 1.0 - p[3];
            for c in &p[..3] {
                let v = ((c + bg) * 255.0).round().clamp(0.0, 255.0);
                data.push(v as u8);
            }
        }
        RasterImage { width: self.width as u32, height: self.height as u32, data }
    }
}

fn kernel(sigma: f64) -> Vec<f32> {
    let radius = (3.0 * sigma).ceil() as i64;
    let mut k: Vec<f64> = (-radius..=radius).map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp()).collect();
    let total: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= total);
    k.into_iter().map(|v| v as f32).collect()
}

fn convolve(src: &[[f32; 4]], w: usize, h: usize, k: &[f32], horizontal: bool) -> Vec<[f32; 4]> {
    let r = (k.len() / 2) as i64;
    let mut out = vec![[0.0f32; 4]; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = [0.0f32; 4];
            for (j, kv) in k.iter().enumerate() {
                let off = j as i64 - r;
                let (sx, sy) = if horizontal { (x as i64 + off, y as i64) } else { (x as i64, y as i64 + off) };
                if sx < 0 || sy < 0 || sx >= w as i64 || sy >= h as i64 {
                    continue;
                }
                let p = src[sy as usize * w + sx as usize];
                for c in 0..4 {
                    acc[c] += kv * p[c];
                }
            }
            out[y * w + x] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::{coverage, FillRule};

    #[test]
    fn empty_canvas_is_white() {
        let img = Canvas::new(3, 2).to_image();
        assert_eq!(img, RasterImage::white(3, 2));
    }

    #[test]
    fn half_transparent_black_is_mid_gray() {
        let mut c = Canvas::new(2, 2);
        let cov = coverage(&[vec![(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)]], FillRule::NonZero, 2, 2).unwrap();
        c.fill(&cov, None, &Source::solid([0.0, 0.0, 0.0, 1.0]), 0.5);
        assert_eq!(c.to_image().pixel(0, 0), [128, 128, 128]);
    }

    fn linear(spread: Spread) -> Gradient {
        Gradient {
            kind: GradientKind::Linear { x1: 0.0, y1: 0.0, x2: 10.0, y2: 0.0 },
            stops: vec![(0.0, [0.0, 0.0, 0.0, 1.0]), (1.0, [1.0, 1.0, 1.0, 1.0])],
            spread,
            device_to_gradient: TransformMatrix::IDENTITY,
        }
    }

    #[test]
    fn linear_gradient_interpolates() {
        let g = linear(Spread::Pad);
        assert_eq!(g.color_at(5.0, 3.0), [0.5, 0.5, 0.5, 1.0]);
        assert_eq!(g.color_at(-4.0, 0.0), [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(g.color_at(40.0, 0.0), [1.0, 1.0, 1.0, 1.0]);
        let r = linear(Spread::Reflect);
        assert_eq!(r.color_at(15.0, 0.0), [0.5, 0.5, 0.5, 1.0]);
        let p = linear(Spread::Repeat);
        assert_eq!(p.color_at(12.5, 0.0), [0.25, 0.25, 0.25, 1.0]);
    }

    #[test]
    fn radial_gradient_distance() {
        let g = Gradient { kind: GradientKind::Radial { cx: 0.0, cy: 0.0, r: 10.0, fx: 0.0, fy: 0.0, fr: 0.0 }, ..linear(Spread::Pad) };
        let c = g.color_at(3.0, 4.0);
        assert!((c[0] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn blur_preserves_mass() {
        let mut c = Canvas::new(21, 21);
        c.px[10 * 21 + 10] = [1.0, 1.0, 1.0, 1.0];
        c.blur(1.5, 1.5);
        let total: f32 = c.px.iter().map(|p| p[3]).sum();
        assert!((total - 1.0).abs() < 1e-4);
    }
}
