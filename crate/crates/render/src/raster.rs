//! Scanline coverage with a symmetric supersampling grid.
//!
//! Each pixel holds `SS × SS` sample points at offsets `(k + 0.5) / SS`.
//! A sample is inside when its winding number satisfies the fill rule or it
//! lies exactly on the edge of an inside span. Pixel coverage is the inside
//! fraction. The grid and the edge rule are invariant under integer
//! translations, mirroring and quarter turns of the pixel lattice.

use crate::geom::Point;

pub const SS: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillRule {
    NonZero,
    EvenOdd,
}

/// Per-pixel coverage in `[0, 1]` over a rectangular window of the canvas.
#[derive(Debug, Clone)]
pub struct Coverage {
    pub x0: usize,
    pub y0: usize,
    pub width: usize,
    pub height: usize,
    pub data: Vec<f32>,
}

impl Coverage {
    pub fn get(&self, x: usize, y: usize) -> f32 {
        if x < self.x0 || y < self.y0 || x >= self.x0 + self.width || y >= self.y0 + self.height {
            return 0.0;
        }
        self.data[(y - self.y0) * self.width + (x - self.x0)]
    }

    /// Expands to a full-canvas mask.
    pub fn to_mask(&self, canvas_w: usize, canvas_h: usize) -> Vec<f32> {
        let mut mask = vec![0.0; canvas_w * canvas_h];
        for y in 0..self.height {
            let row = (self.y0 + y) * canvas_w + self.x0;
            mask[row..row + self.width].copy_from_slice(&self.data[y * self.width..(y + 1) * self.width]);
        }
        mask
    }
}

/// Distance in sample units below which a crossing counts as lying exactly
/// on a sample.
const TIE_EPS: f64 = 1e-9;

/// Smallest sample index strictly after position `u`, snapping near-ties.
fn first_after(u: f64) -> i64 {
    let r = u.round();
    if (u - r).abs() < TIE_EPS {
        r as i64 + 1
    } else {
        u.ceil() as i64
    }
}

/// Smallest sample index at or after position `u`. Samples lying on an
/// edge are inside from both sides, a rule that survives mirroring and
/// leaves no seam between pieces sharing an edge.
fn first_at_or_after(u: f64) -> i64 {
    let r = u.round();
    if (u - r).abs() < TIE_EPS {
        r as i64
    } else {
        u.ceil() as i64
    }
}

/// Rasterizes closed polygons given in device pixels. Returns `None` when
/// nothing lands on the canvas.
pub fn coverage(polygons: &[Vec<Point>], rule: FillRule, canvas_w: usize, canvas_h: usize) -> Option<Coverage> {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for poly in polygons {
        for &(x, y) in poly {
            if !(x.is_finite() && y.is_finite()) {
                return None;
            }
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
    }
    if min_x > max_x {
        return None;
    }
    let px0 = (min_x.floor().max(0.0)) as usize;
    let py0 = (min_y.floor().max(0.0)) as usize;
    let px1 = (max_x.ceil().min(canvas_w as f64)).max(0.0) as usize;
    let py1 = (max_y.ceil().min(canvas_h as f64)).max(0.0) as usize;
    if px0 >= px1 || py0 >= py1 {
        return None;
    }
    let width = px1 - px0;
    let height = py1 - py0;
    let ss = SS as usize;
    let sub_rows = height * ss;
    let row_base = (py0 as i64) * SS;

    let mut buckets: Vec<Vec<(f64, i32)>> = vec![Vec::new(); sub_rows];
    for poly in polygons {
        let n = poly.len();
        if n < 2 {
            continue;
        }
        for i in 0..n {
            let (ax, ay) = poly[i];
            let (bx, by) = poly[(i + 1) % n];
            if ay == by {
                continue;
            }
            let (dir, (x0, y0), (x1, y1)) = if ay < by { (1, (ax, ay), (bx, by)) } else { (-1, (bx, by), (ax, ay)) };
            // sample rows r with y0 <= (r + 0.5) / SS < y1
            let r_start = ((y0 * SS as f64 - 0.5).ceil() as i64).max(row_base);
            let r_end = ((y1 * SS as f64 - 0.5).ceil() as i64).min(row_base + sub_rows as i64);
            let slope = (x1 - x0) / (y1 - y0);
            for r in r_start..r_end {
                let ys = (r as f64 + 0.5) / SS as f64;
                let x = x0 + (ys - y0) * slope;
                buckets[(r - row_base) as usize].push((x, dir));
            }
        }
    }

    let col_lo = px0 as i64 * SS;
    let col_hi = px1 as i64 * SS;
    let mut data = vec![0.0f32; width * height];
    let mut counts = vec![0i32; width + 1];
    let mut diff = vec![0i32; width + 1];
    let norm = 1.0 / (SS * SS) as f32;
    for row in 0..height {
        counts.iter_mut().for_each(|c| *c = 0);
        diff.iter_mut().for_each(|c| *c = 0);
        for k in 0..ss {
            let crossings = &mut buckets[row * ss + k];
            if crossings.is_empty() {
                continue;
            }
            crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut winding = 0;
            // first sample column not yet counted on this row
            let mut next_free = col_lo;
            for i in 0..crossings.len() - 1 {
                winding += crossings[i].1;
                let inside = match rule {
                    FillRule::NonZero => winding != 0,
                    FillRule::EvenOdd => winding % 2 != 0,
                };
                if !inside {
                    continue;
                }
                // sample columns j with xa <= (j + 0.5) / SS <= xb
                let j0 = first_at_or_after(crossings[i].0 * SS as f64 - 0.5).max(next_free);
                let j1 = first_after(crossings[i + 1].0 * SS as f64 - 0.5).min(col_hi);
                if j0 >= j1 {
                    continue;
                }
                next_free = j1;
                let p0 = (j0 / SS) as usize - px0;
                let p1 = ((j1 - 1) / SS) as usize - px0;
                if p0 == p1 {
                    counts[p0] += (j1 - j0) as i32;
                } else {
                    counts[p0] += ((p0 + px0 + 1) as i64 * SS - j0) as i32;
                    counts[p1] += (j1 - (p1 + px0) as i64 * SS) as i32;
                    diff[p0 + 1] += SS as i32;
                    diff[p1] -= SS as i32;
                }
            }
        }
        let mut run = 0;
        let out = &mut data[row * width..(row + 1) * width];
        for x in 0..width {
            run += diff[x];
            out[x] = (counts[x] + run) as f32 * norm;
        }
    }
    Some(Coverage { x0: px0, y0: py0, width, height, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Point> {
        vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    }

    fn full(cov: &Coverage, w: usize, h: usize) -> Vec<f32> {
        cov.to_mask(w, h)
    }

    #[test]
    fn pixel_aligned_square_is_exact() {
        let c = coverage(&[rect(1.0, 1.0, 3.0, 3.0)], FillRule::NonZero, 4, 4).unwrap();
        let m = full(&c, 4, 4);
        let expected = [
            0., 0., 0., 0., //
            0., 1., 1., 0., //
            0., 1., 1., 0., //
            0., 0., 0., 0.,
        ];
        assert_eq!(m, expected);
    }

    #[test]
    fn half_pixel_edge_is_half_covered() {
        let c = coverage(&[rect(0.0, 0.0, 1.5, 1.0)], FillRule::NonZero, 2, 1).unwrap();
        assert_eq!(full(&c, 2, 1), vec![1.0, 0.5]);
    }

    #[test]
    fn even_odd_makes_holes() {
        let polys = [rect(0.0, 0.0, 4.0, 4.0), rect(1.0, 1.0, 3.0, 3.0)];
        let nz = full(&coverage(&polys, FillRule::NonZero, 4, 4).unwrap(), 4, 4);
        let eo = full(&coverage(&polys, FillRule::EvenOdd, 4, 4).unwrap(), 4, 4);
        assert_eq!(nz[5], 1.0);
        assert_eq!(eo[5], 0.0);
        assert_eq!(eo[0], 1.0);
    }

    #[test]
    fn opposite_orientation_cancels_under_nonzero() {
        let mut inner = rect(1.0, 1.0, 3.0, 3.0);
        inner.reverse();
        let polys = [rect(0.0, 0.0, 4.0, 4.0), inner];
        let nz = full(&coverage(&polys, FillRule::NonZero, 4, 4).unwrap(), 4, 4);
        assert_eq!(nz[5], 0.0);
    }

    #[test]
    fn triangle_area_matches_coverage_sum() {
        let tri: Vec<Point> = vec![(0.3, 0.2), (7.7, 1.1), (3.1, 6.9)];
        let area = 0.5 * ((tri[1].0 - tri[0].0) * (tri[2].1 - tri[0].1) - (tri[2].0 - tri[0].0) * (tri[1].1 - tri[0].1)).abs();
        let c = coverage(&[tri], FillRule::NonZero, 8, 8).unwrap();
        let total: f32 = c.data.iter().sum();
        assert!((total as f64 - area).abs() < 0.6, "{total} vs {area}");
    }

    #[test]
    fn mirror_symmetry_is_exact() {
        let tri = vec![(0.3, 0.2), (7.7, 1.1), (3.1, 6.9)];
        let mirrored: Vec<Point> = tri.iter().map(|&(x, y)| (8.0 - x, y)).collect();
        let a = full(&coverage(&[tri], FillRule::NonZero, 8, 8).unwrap(), 8, 8);
        let b = full(&coverage(&[mirrored], FillRule::NonZero, 8, 8).unwrap(), 8, 8);
        for y in 0..8 {
            for x in 0..8 {
                assert_eq!(a[y * 8 + x], b[y * 8 + 7 - x]);
            }
        }
    }

    #[test]
    fn offscreen_is_none() {
        assert!(coverage(&[rect(-5.0, -5.0, -1.0, -1.0)], FillRule::NonZero, 4, 4).is_none());
        assert!(coverage(&[rect(1.0, 1.0, 1.0, 3.0)], FillRule::NonZero, 4, 4).is_none());
    }
}
