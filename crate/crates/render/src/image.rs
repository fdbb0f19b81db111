//! RGB pixel buffers, PNG I/O, and the pixel-space transforms used as
//! oracles for geometric edits.

use std::path::Path;

use crate::Error;

/// A row-major 8-bit RGB image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    pub width: u32,
    pub height: u32,
    pub data: Vec<u8>,
}

impl RasterImage {
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> RasterImage {
        let data = rgb.iter().copied().cycle().take(width as usize * height as usize * 3).collect();
        RasterImage { width, height, data }
    }

    pub fn black(width: u32, height: u32) -> RasterImage {
        RasterImage::filled(width, height, [0, 0, 0])
    }

    pub fn white(width: u32, height: u32) -> RasterImage {
        RasterImage::filled(width, height, [255, 255, 255])
    }

    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<RasterImage, Error> {
        let expected = width as usize * height as usize * 3;
        if data.len() != expected {
            return Err(Error::BufferSize { expected, actual: data.len() });
        }
        Ok(RasterImage { width, height, data })
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = self.index(x, y);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let i = self.index(x, y);
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    fn index(&self, x: u32, y: u32) -> usize {
        (y as usize * self.width as usize + x as usize) * 3
    }

    fn remap(&self, width: u32, height: u32, source: impl Fn(u32, u32) -> Option<(u32, u32)>) -> RasterImage {
        let mut out = RasterImage::white(width, height);
        for y in 0..height {
            for x in 0..width {
                if let Some((sx, sy)) = source(x, y) {
                    out.set_pixel(x, y, self.pixel(sx, sy));
                }
            }
        }
        out
    }

    /// Mirror about the vertical axis.
    pub fn flip_horizontal(&self) -> RasterImage {
        self.remap(self.width, self.height, |x, y| Some((self.width - 1 - x, y)))
    }

    /// Mirror about the horizontal axis.
    pub fn flip_vertical(&self) -> RasterImage {
        self.remap(self.width, self.height, |x, y| Some((x, self.height - 1 - y)))
    }

    /// Quarter turn clockwise on screen, the direction of `rotate(90)` in
    /// SVG's y-down coordinates.
    pub fn rotate90_cw(&self) -> RasterImage {
        self.remap(self.height, self.width, |x, y| Some((y, self.height - 1 - x)))
    }

    /// Shifts content by whole pixels; uncovered pixels become white.
    pub fn translate(&self, dx: i64, dy: i64) -> RasterImage {
        let (w, h) = (self.width as i64, self.height as i64);
        self.remap(self.width, self.height, |x, y| {
            let (sx, sy) = (x as i64 - dx, y as i64 - dy);
            ((0..w).contains(&sx) && (0..h).contains(&sy)).then_some((sx as u32, sy as u32))
        })
    }

    pub fn save_png(&self, path: impl AsRef<Path>) -> Result<(), Error> {
        image::save_buffer(path.as_ref(), &self.data, self.width, self.height, image::ExtendedColorType::Rgb8)
            .map_err(|e| Error::Image(e.to_string()))
    }

    /// Loads any PNG, dropping alpha by compositing over white.
    pub fn load_png(path: impl AsRef<Path>) -> Result<RasterImage, Error> {
        let img = image::open(path.as_ref()).map_err(|e| Error::Image(e.to_string()))?;
        let rgba = img.to_rgba8();
        let (width, height) = rgba.dimensions();
        let mut data = Vec::with_capacity(width as usize * height as usize * 3);
        for px in rgba.pixels() {
            let a = px[3] as u32;
            for c in 0..3 {
                let v = (px[c] as u32 * a + 255 * (255 - a) + 127) / 255;
                data.push(v as u8);
            }
        }
        RasterImage::from_raw(width, height, data)
    }
}

/// Result of rendering one document or frame. Unrenderable inputs become an
/// all-black [`RenderOutcome::Penalized`] image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenderOutcome {
    Ok(RasterImage),
    Penalized(RasterImage),
}

impl RenderOutcome {
    pub fn penalty(size: u32) -> RenderOutcome {
        RenderOutcome::Penalized(RasterImage::black(size, size))
    }

    pub fn image(&self) -> &RasterImage {
        match self {
            RenderOutcome::Ok(img) | RenderOutcome::Penalized(img) => img,
        }
    }

    pub fn into_image(self) -> RasterImage {
        match self {
            RenderOutcome::Ok(img) | RenderOutcome::Penalized(img) => img,
        }
    }

    pub fn is_penalized(&self) -> bool {
        matches!(self, RenderOutcome::Penalized(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn numbered(w: u32, h: u32) -> RasterImage {
        let data = (0..w * h).flat_map(|i| [i as u8, 0, 0]).collect();
        RasterImage::from_raw(w, h, data).unwrap()
    }

    #[test]
    fn buffer_length_is_checked() {
        assert!(RasterImage::from_raw(2, 2, vec![0; 11]).is_err());
        assert_eq!(RasterImage::white(3, 2).data.len(), 18);
    }

    #[test]
    fn rotation_matches_corner_mapping() {
        // 3x2 image:  0 1 2 / 3 4 5  -> rotated clockwise: 3 0 / 4 1 / 5 2
        let r = numbered(3, 2).rotate90_cw();
        assert_eq!((r.width, r.height), (2, 3));
        let firsts: Vec<u8> = r.data.chunks(3).map(|p| p[0]).collect();
        assert_eq!(firsts, vec![3, 0, 4, 1, 5, 2]);
        let full = numbered(4, 3).rotate90_cw().rotate90_cw().rotate90_cw().rotate90_cw();
        assert_eq!(full, numbered(4, 3));
    }

    #[test]
    fn flips_are_involutions() {
        let img = numbered(5, 4);
        assert_eq!(img.flip_horizontal().flip_horizontal(), img);
        assert_eq!(img.flip_vertical().flip_vertical(), img);
        assert_eq!(img.flip_horizontal().pixel(0, 0), img.pixel(4, 0));
    }

    #[test]
    fn translation_fills_white() {
        let t = numbered(3, 3).translate(1, 0);
        assert_eq!(t.pixel(0, 0), [255, 255, 255]);
        assert_eq!(t.pixel(1, 0), [0, 0, 0]);
        assert_eq!(t.pixel(2, 1), [4, 0, 0]);
    }

    #[test]
    fn png_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.png");
        let img = numbered(7, 5);
        img.save_png(&path).unwrap();
        assert_eq!(RasterImage::load_png(&path).unwrap(), img);
    }
}
