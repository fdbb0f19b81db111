//! Path flattening and shape outlines.

use std::f64::consts::PI;

use svgbench_core::{PathData, PathOp, TransformMatrix};

pub type Point = (f64, f64);

/// A flattened subpath. Fills treat every subpath as closed; strokes only
/// join the ends when `closed` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl Polyline {
    pub fn transform(&self, m: &TransformMatrix) -> Polyline {
        Polyline { points: self.points.iter().map(|&(x, y)| m.apply(x, y)).collect(), closed: self.closed }
    }
}

/// Axis-aligned bounds `(min_x, min_y, max_x, max_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bounds {
    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Bounds> {
        let mut it = points.into_iter();
        let &(x, y) = it.next()?;
        let mut b = Bounds { min_x: x, min_y: y, max_x: x, max_y: y };
        for &(x, y) in it {
            b.include(x, y);
        }
        Some(b)
    }

    pub fn include(&mut self, x: f64, y: f64) {
        self.min_x = self.min_x.min(x);
        self.min_y = self.min_y.min(y);
        self.max_x = self.max_x.max(x);
        self.max_y = self.max_y.max(y);
    }

    pub fn union(self, other: Bounds) -> Bounds {
        Bounds {
            min_x: self.min_x.min(other.min_x),
            min_y: self.min_y.min(other.min_y),
            max_x: self.max_x.max(other.max_x),
            max_y: self.max_y.max(other.max_y),
        }
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

pub fn polylines_bounds(lines: &[Polyline]) -> Option<Bounds> {
    Bounds::of_points(lines.iter().flat_map(|l| l.points.iter()))
}

struct Builder {
    tolerance: f64,
    lines: Vec<Polyline>,
    current: Vec<Point>,
}

impl Builder {
    fn new(tolerance: f64) -> Builder {
        Builder { tolerance, lines: Vec::new(), current: Vec::new() }
    }

    fn move_to(&mut self, p: Point) {
        self.finish(false);
        self.current.push(p);
    }

    fn line_to(&mut self, p: Point) {
        self.current.push(p);
    }

    fn last(&self) -> Point {
        *self.current.last().unwrap_or(&(0.0, 0.0))
    }

    fn quad_to(&mut self, c: Point, p: Point) {
        let p0 = self.last();
        let dd = ((p0.0 - 2.0 * c.0 + p.0).powi(2) + (p0.1 - 2.0 * c.1 + p.1).powi(2)).sqrt();
        let n = segments_for(dd / 4.0, self.tolerance);
        for i in 1..=n {
            let t = i as f64 / n as f64;
            let u = 1.0 - t;
            self.current.push((u * u * p0.0 + 2.0 * u * t * c.0 + t * t * p.0, u * u * p0.1 + 2.0 * u * t * c.1 + t * t * p.1));
        }
    }

    fn cubic_to(&mut self, c1: Point, c2: Point, p: Point) {
        let p0 = self.last();
        let d1 = ((p0.0 - 2.0 * c1.0 + c2.0).powi(2) + (p0.1 - 2.0 * c1.1 + c2.1).powi(2)).sqrt();
        let d2 = ((c1.0 - 2.0 * c2.0 + p.0).powi(2) + (c1.1 - 2.0 * c2.1 + p.1).powi(2)).sqrt();
        let n = segments_for(0.75 * d1.max(d2), self.tolerance);
        for i in 1..=n {
            let t = i as f64 / n as f64;
            let u = 1.0 - t;
            let (a, b, c, d) = (u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t);
            self.current.push((a * p0.0 + b * c1.0 + c * c2.0 + d * p.0, a * p0.1 + b * c1.1 + c * c2.1 + d * p.1));
        }
    }

    fn arc_to(&mut self, rx: f64, ry: f64, phi_deg: f64, large: bool, sweep: bool, p: Point) {
        let p0 = self.last();
        if p0 == p {
            return;
        }
        let (mut rx, mut ry) = (rx.abs(), ry.abs());
        if rx == 0.0 || ry == 0.0 {
            self.line_to(p);
            return;
        }
        let phi = phi_deg.to_radians();
        let (sin_phi, cos_phi) = phi.sin_cos();
        let dx2 = (p0.0 - p.0) / 2.0;
        let dy2 = (p0.1 - p.1) / 2.0;
        let x1p = cos_phi * dx2 + sin_phi * dy2;
        let y1p = -sin_phi * dx2 + cos_phi * dy2;
        let lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
        if lambda > 1.0 {
            let s = lambda.sqrt();
            rx *= s;
            ry *= s;
        }
        let num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p;
        let den = rx * rx * y1p * y1p + ry * ry * x1p * x1p;
        let mut coef = if den == 0.0 { 0.0 } else { (num / den).max(0.0).sqrt() };
        if large == sweep {
            coef = -coef;
        }
        let cxp = coef * rx * y1p / ry;
        let cyp = -coef * ry * x1p / rx;
        let cx = cos_phi * cxp - sin_phi * cyp + (p0.0 + p.0) / 2.0;
        let cy = sin_phi * cxp + cos_phi * cyp + (p0.1 + p.1) / 2.0;
        let angle = |ux: f64, uy: f64, vx: f64, vy: f64| (ux * vy - uy * vx).atan2(ux * vx + uy * vy);
        let ux = (x1p - cxp) / rx;
        let uy = (y1p - cyp) / ry;
        let vx = (-x1p - cxp) / rx;
        let vy = (-y1p - cyp) / ry;
        let theta1 = angle(1.0, 0.0, ux, uy);
        let mut dtheta = angle(ux, uy, vx, vy);
        if !sweep && dtheta > 0.0 {
            dtheta -= 2.0 * PI;
        } else if sweep && dtheta < 0.0 {
            dtheta += 2.0 * PI;
        }
        let n = arc_segments(rx.max(ry), dtheta.abs(), self.tolerance);
        for i in 1..n {
            let th = theta1 + dtheta * i as f64 / n as f64;
            let (s, c) = th.sin_cos();
            self.current.push((cx + rx * c * cos_phi - ry * s * sin_phi, cy + rx * c * sin_phi + ry * s * cos_phi));
        }
        self.current.push(p);
    }

    fn close(&mut self) {
        self.finish(true);
    }

    fn finish(&mut self, closed: bool) {
        if !self.current.is_empty() {
            let mut points = std::mem::take(&mut self.current);
            points.dedup();
            if closed && points.len() > 1 && points.first() == points.last() {
                points.pop();
            }
            self.lines.push(Polyline { points, closed });
        }
    }
}

fn segments_for(deviation: f64, tolerance: f64) -> usize {
    if deviation.is_nan() || deviation <= 0.0 {
        return 1;
    }
    ((deviation / tolerance).sqrt().ceil() as usize).clamp(1, 1000)
}

fn arc_segments(radius: f64, sweep: f64, tolerance: f64) -> usize {
    if radius <= tolerance {
        return ((sweep / (PI / 2.0)).ceil() as usize).max(1);
    }
    let step = 2.0 * (1.0 - tolerance / radius).clamp(-1.0, 1.0).acos();
    ((sweep / step).ceil() as usize).clamp(1, 4000)
}

/// Number of segments for a full circle, rounded to a multiple of four so
/// outlines keep the symmetries of the square grid.
pub fn circle_segments(radius: f64, tolerance: f64) -> usize {
    let n = arc_segments(radius, 2.0 * PI, tolerance).max(8);
    n.div_ceil(4) * 4
}

/// Flattens path data to polylines with at most `tolerance` deviation.
pub fn flatten_path(path: &PathData, tolerance: f64) -> Vec<Polyline> {
    let mut b = Builder::new(tolerance);
    let mut cur: Point = (0.0, 0.0);
    let mut start: Point = (0.0, 0.0);
    let mut last_ctrl: Option<(PathOp, Point)> = None;
    let mut open = false;

    for cmd in &path.commands {
        let rel = cmd.relative;
        let arity = cmd.op.arity();
        let groups: Vec<&[f64]> = if arity == 0 { vec![&[]] } else { cmd.args.chunks(arity).collect() };
        for (gi, a) in groups.into_iter().enumerate() {
            let abs = |x: f64, y: f64, cur: Point| if rel { (cur.0 + x, cur.1 + y) } else { (x, y) };
            if !open && cmd.op != PathOp::MoveTo {
                b.move_to(cur);
                start = cur;
                open = true;
            }
            let mut ctrl = None;
            match cmd.op {
                PathOp::MoveTo => {
                    let p = abs(a[0], a[1], cur);
                    if gi == 0 {
                        b.move_to(p);
                        start = p;
                        open = true;
                    } else {
                        b.line_to(p);
                    }
                    cur = p;
                }
                PathOp::LineTo => {
                    cur = abs(a[0], a[1], cur);
                    b.line_to(cur);
                }
                PathOp::HorizontalTo => {
                    cur = (if rel { cur.0 + a[0] } else { a[0] }, cur.1);
                    b.line_to(cur);
                }
                PathOp::VerticalTo => {
                    cur = (cur.0, if rel { cur.1 + a[0] } else { a[0] });
                    b.line_to(cur);
                }
                PathOp::CubicTo => {
                    let c1 = abs(a[0], a[1], cur);
                    let c2 = abs(a[2], a[3], cur);
                    let p = abs(a[4], a[5], cur);
                    b.cubic_to(c1, c2, p);
                    ctrl = Some((PathOp::CubicTo, c2));
                    cur = p;
                }
                PathOp::SmoothCubicTo => {
                    let c1 = match last_ctrl {
                        Some((PathOp::CubicTo, c)) => (2.0 * cur.0 - c.0, 2.0 * cur.1 - c.1),
                        _ => cur,
                    };
                    let c2 = abs(a[0], a[1], cur);
                    let p = abs(a[2], a[3], cur);
                    b.cubic_to(c1, c2, p);
                    ctrl = Some((PathOp::CubicTo, c2));
                    cur = p;
                }
                PathOp::QuadTo => {
                    let c = abs(a[0], a[1], cur);
                    let p = abs(a[2], a[3], cur);
                    b.quad_to(c, p);
                    ctrl = Some((PathOp::QuadTo, c));
                    cur = p;
                }
                PathOp::SmoothQuadTo => {
                    let c = match last_ctrl {
                        Some((PathOp::QuadTo, c)) => (2.0 * cur.0 - c.0, 2.0 * cur.1 - c.1),
                        _ => cur,
                    };
                    let p = abs(a[0], a[1], cur);
                    b.quad_to(c, p);
                    ctrl = Some((PathOp::QuadTo, c));
                    cur = p;
                }
                PathOp::ArcTo => {
                    let p = abs(a[5], a[6], cur);
                    b.arc_to(a[0], a[1], a[2], a[3] != 0.0, a[4] != 0.0, p);
                    cur = p;
                }
                PathOp::ClosePath => {
                    b.close();
                    cur = start;
                    open = false;
                }
            }
            last_ctrl = ctrl;
        }
    }
    b.finish(false);
    b.lines
}

pub fn rect_outline(x: f64, y: f64, w: f64, h: f64, rx: f64, ry: f64, tolerance: f64) -> Polyline {
    if rx <= 0.0 || ry <= 0.0 {
        return Polyline { points: vec![(x, y), (x + w, y), (x + w, y + h), (x, y + h)], closed: true };
    }
    let n = circle_segments(rx.max(ry), tolerance) / 4;
    let mut points = Vec::with_capacity(4 * (n + 1));
    let corners = [(x + w - rx, y + ry, -PI / 2.0), (x + w - rx, y + h - ry, 0.0), (x + rx, y + h - ry, PI / 2.0), (x + rx, y + ry, PI)];
    for (cx, cy, a0) in corners {
        for i in 0..=n {
            let a = a0 + (PI / 2.0) * i as f64 / n as f64;
            let (s, c) = sin_cos_exact(a);
            points.push((cx + rx * c, cy + ry * s));
        }
    }
    points.dedup();
    Polyline { points, closed: true }
}

pub fn ellipse_outline(cx: f64, cy: f64, rx: f64, ry: f64, tolerance: f64) -> Polyline {
    let n = circle_segments(rx.max(ry), tolerance);
    let points = (0..n)
        .map(|i| {
            let (s, c) = sin_cos_exact(2.0 * PI * i as f64 / n as f64);
            (cx + rx * c, cy + ry * s)
        })
        .collect();
    Polyline { points, closed: true }
}

/// `sin_cos` that is exact at multiples of a quarter turn.
fn sin_cos_exact(a: f64) -> (f64, f64) {
    let quarters = a / (PI / 2.0);
    if (quarters - quarters.round()).abs() < 1e-12 {
        match (quarters.round() as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        }
    } else {
        a.sin_cos()
    }
}

/// Length of a polyline, following the closing segment when closed.
pub fn polyline_length(line: &Polyline) -> f64 {
    let mut total = 0.0;
    for w in line.points.windows(2) {
        total += dist(w[0], w[1]);
    }
    if line.closed && line.points.len() > 1 {
        total += dist(*line.points.last().unwrap(), line.points[0]);
    }
    total
}

pub fn dist(a: Point, b: Point) -> f64 {
    ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt()
}
