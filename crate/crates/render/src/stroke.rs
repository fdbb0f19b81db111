//! Stroke outlining.
//!
//! A stroke is emitted as a set of positively oriented pieces (segment
//! bodies, joins and caps). Their union, filled with the nonzero rule, is the
//! stroke area.

use crate::geom::{circle_segments, dist, Point, Polyline};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineCap {
    Butt,
    Round,
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineJoin {
    Miter,
    Round,
    Bevel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrokeStyle {
    pub width: f64,
    pub cap: LineCap,
    pub join: LineJoin,
    pub miter_limit: f64,
    pub dashes: Option<Vec<f64>>,
    pub dash_offset: f64,
}

impl Default for StrokeStyle {
    fn default() -> Self {
        StrokeStyle { width: 1.0, cap: LineCap::Butt, join: LineJoin::Miter, miter_limit: 4.0, dashes: None, dash_offset: 0.0 }
    }
}

fn signed_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    let mut a = 0.0;
    for i in 0..n {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % n];
        a += x0 * y1 - x1 * y0;
    }
    a / 2.0
}

struct Outliner {
    half: f64,
    tolerance: f64,
    pieces: Vec<Vec<Point>>,
}

impl Outliner {
    fn push(&mut self, mut poly: Vec<Point>) {
        let area = signed_area(&poly);
        if area == 0.0 || !area.is_finite() {
            return;
        }
        if area < 0.0 {
            poly.reverse();
        }
        self.pieces.push(poly);
    }

    fn disc(&mut self, c: Point) {
        let n = circle_segments(self.half, self.tolerance);
        let poly = (0..n)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                (c.0 + self.half * a.cos(), c.1 + self.half * a.sin())
            })
            .collect();
        self.push(poly);
    }

    fn segment(&mut self, a: Point, b: Point) {
        let (nx, ny) = normal(a, b);
        let (hx, hy) = (nx * self.half, ny * self.half);
        self.push(vec![(a.0 + hx, a.1 + hy), (b.0 + hx, b.1 + hy), (b.0 - hx, b.1 - hy), (a.0 - hx, a.1 - hy)]);
    }

    fn join(&mut self, prev: Point, v: Point, next: Point, style: &StrokeStyle) {
        let n0 = normal(prev, v);
        let n1 = normal(v, next);
        let d0 = (v.0 - prev.0, v.1 - prev.1);
        let d1 = (next.0 - v.0, next.1 - v.1);
        let cross = d0.0 * d1.1 - d0.1 * d1.0;
        let dot = n0.0 * n1.0 + n0.1 * n1.1;
        if cross.abs() <= 1e-12 * (d0.0.hypot(d0.1) * d1.0.hypot(d1.1)) && dot > 0.0 {
            return;
        }
        if style.join == LineJoin::Round {
            self.disc(v);
            return;
        }
        // outer side is opposite the turn direction
        let s = if cross > 0.0 { -1.0 } else { 1.0 };
        let o0 = (v.0 + s * self.half * n0.0, v.1 + s * self.half * n0.1);
        let o1 = (v.0 + s * self.half * n1.0, v.1 + s * self.half * n1.1);
        if style.join == LineJoin::Miter && dot > -1.0 + 1e-12 {
            let ratio = (2.0 / (1.0 + dot)).sqrt();
            if ratio <= style.miter_limit {
                let k = s * self.half / (1.0 + dot);
                let tip = (v.0 + k * (n0.0 + n1.0), v.1 + k * (n0.1 + n1.1));
                self.push(vec![v, o0, tip, o1]);
                return;
            }
        }
        self.push(vec![v, o0, o1]);
    }

    fn cap(&mut self, end: Point, from: Point, style: &StrokeStyle) {
        match style.cap {
            LineCap::Butt => {}
            LineCap::Round => self.disc(end),
            LineCap::Square => {
                let len = dist(from, end);
                let (dx, dy) = ((end.0 - from.0) / len, (end.1 - from.1) / len);
                let ext = (end.0 + dx * self.half, end.1 + dy * self.half);
                self.segment(end, ext);
            }
        }
    }

    fn dot(&mut self, p: Point, style: &StrokeStyle) {
        match style.cap {
            LineCap::Butt => {}
            LineCap::Round => self.disc(p),
            LineCap::Square => {
                let h = self.half;
                self.push(vec![(p.0 - h, p.1 - h), (p.0 + h, p.1 - h), (p.0 + h, p.1 + h), (p.0 - h, p.1 + h)]);
            }
        }
    }

    fn polyline(&mut self, line: &Polyline, style: &StrokeStyle) {
        let mut pts = line.points.clone();
        pts.dedup();
        if line.closed && pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        match pts.len() {
            0 => return,
            1 => {
                self.dot(pts[0], style);
                return;
            }
            _ => {}
        }
        let n = pts.len();
        let closed = line.closed && n > 2;
        let seg_count = if closed { n } else { n - 1 };
        for i in 0..seg_count {
            self.segment(pts[i], pts[(i + 1) % n]);
        }
        if closed {
            for i in 0..n {
                self.join(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n], style);
            }
        } else {
            for i in 1..n - 1 {
                self.join(pts[i - 1], pts[i], pts[i + 1], style);
            }
            self.cap(pts[0], pts[1], style);
            self.cap(pts[n - 1], pts[n - 2], style);
        }
    }
}

fn normal(a: Point, b: Point) -> Point {
    let len = dist(a, b);
    (-(b.1 - a.1) / len, (b.0 - a.0) / len)
}

/// Splits polylines into open dash pieces. Returns the input unchanged when
/// the pattern is empty or sums to zero.
pub fn apply_dashes(lines: &[Polyline], dashes: &[f64], offset: f64) -> Vec<Polyline> {
    let mut pattern: Vec<f64> = dashes.to_vec();
    if pattern.len() % 2 == 1 {
        pattern.extend_from_slice(dashes);
    }
    let total: f64 = pattern.iter().sum();
    if pattern.is_empty() || total.is_nan() || total <= 0.0 || pattern.iter().any(|d| *d < 0.0) {
        return lines.to_vec();
    }
    let mut out = Vec::new();
    for line in lines {
        let mut pts = line.points.clone();
        if line.closed && pts.len() > 1 {
            pts.push(pts[0]);
        }
        // position within the pattern at the start of the line
        let mut phase = offset.rem_euclid(total);
        let mut idx = 0;
        while phase >= pattern[idx] {
            phase -= pattern[idx];
            idx = (idx + 1) % pattern.len();
        }
        let mut remaining = pattern[idx] - phase;
        let mut on = idx % 2 == 0;
        let mut current: Vec<Point> = if on { vec![pts[0]] } else { Vec::new() };
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let seg = dist(a, b);
            let mut t0 = 0.0;
            while seg - t0 > remaining {
                t0 += remaining;
                let f = t0 / seg;
                let p = (a.0 + (b.0 - a.0) * f, a.1 + (b.1 - a.1) * f);
                if on {
                    current.push(p);
                    out.push(Polyline { points: std::mem::take(&mut current), closed: false });
                } else {
                    current = vec![p];
                }
                on = !on;
                idx = (idx + 1) % pattern.len();
                remaining = pattern[idx];
            }
            remaining -= seg - t0;
            if on {
                current.push(b);
            }
        }
        if on && current.len() > 1 {
            out.push(Polyline { points: current, closed: false });
        }
    }
    out
}

/// Outlines `lines` as stroke pieces in the same coordinate space.
pub fn stroke_outline(lines: &[Polyline], style: &StrokeStyle, tolerance: f64) -> Vec<Vec<Point>> {
    let mut o = Outliner { half: style.width / 2.0, tolerance, pieces: Vec::new() };
    if o.half.is_nan() || o.half <= 0.0 {
        return Vec::new();
    }
    let dashed;
    let lines = match &style.dashes {
        Some(d) => {
            dashed = apply_dashes(lines, d, style.dash_offset);
            &dashed[..]
        }
        None => lines,
    };
    for line in lines {
        o.polyline(line, style);
    }
    o.pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::{coverage, FillRule};

    fn open(points: Vec<Point>) -> Polyline {
        Polyline { points, closed: false }
    }

    fn area(pieces: &[Vec<Point>], w: usize) -> f32 {
        coverage(pieces, FillRule::NonZero, w, w).map(|c| c.data.iter().sum()).unwrap_or(0.0)
    }

    #[test]
    fn horizontal_line_is_a_rectangle() {
        let pieces = stroke_outline(&[open(vec![(2.0, 5.0), (8.0, 5.0)])], &StrokeStyle { width: 2.0, ..Default::default() }, 0.05);
        assert_eq!(area(&pieces, 10), 12.0);
    }

    #[test]
    fn square_caps_extend_by_half_width() {
        let style = StrokeStyle { width: 2.0, cap: LineCap::Square, ..Default::default() };
        let pieces = stroke_outline(&[open(vec![(2.0, 5.0), (8.0, 5.0)])], &style, 0.05);
        assert_eq!(area(&pieces, 10), 16.0);
    }

    #[test]
    fn closed_square_with_miter_joins_is_a_frame() {
        let line = Polyline { points: vec![(2.0, 2.0), (8.0, 2.0), (8.0, 8.0), (2.0, 8.0)], closed: true };
        let pieces = stroke_outline(&[line], &StrokeStyle { width: 2.0, ..Default::default() }, 0.05);
        // outer 8x8 minus inner 4x4
        assert_eq!(area(&pieces, 10), 48.0);
        let bevel = StrokeStyle { width: 2.0, join: LineJoin::Bevel, ..Default::default() };
        // shifted off the sample lattice so no sample sits on the bevel edge
        let line = Polyline { points: vec![(2.1, 2.0), (8.1, 2.0), (8.1, 8.0), (2.1, 8.0)], closed: true };
        let a = area(&stroke_outline(&[line], &bevel, 0.05), 10);
        assert!((a - 46.0).abs() < 0.1, "{a}");
    }

    #[test]
    fn all_pieces_are_positively_oriented() {
        let line = open(vec![(1.0, 1.0), (5.0, 9.0), (9.0, 2.0), (3.0, 4.0)]);
        for join in [LineJoin::Miter, LineJoin::Round, LineJoin::Bevel] {
            let style = StrokeStyle { width: 1.5, join, cap: LineCap::Round, ..Default::default() };
            for p in stroke_outline(std::slice::from_ref(&line), &style, 0.05) {
                assert!(signed_area(&p) > 0.0);
            }
        }
    }

    #[test]
    fn dashes_split_length() {
        let line = open(vec![(0.0, 0.0), (10.0, 0.0)]);
        let d = apply_dashes(std::slice::from_ref(&line), &[2.0, 1.0], 0.0);
        let starts: Vec<f64> = d.iter().map(|l| l.points[0].0).collect();
        assert_eq!(starts, vec![0.0, 3.0, 6.0, 9.0]);
        assert_eq!(d[3].points, vec![(9.0, 0.0), (10.0, 0.0)]);
        let shifted = apply_dashes(&[line], &[2.0, 1.0], 1.0);
        assert_eq!(shifted[0].points, vec![(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(shifted[1].points[0], (2.0, 0.0));
    }
}
