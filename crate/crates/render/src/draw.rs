//! Document tree to pixels.

use std::collections::HashMap;
use std::rc::Rc;

use svgbench_core::length::{axis_of, Length};
use svgbench_core::{AttrValue, Document, Element, ElementKind, TransformMatrix};

use crate::canvas::{Canvas, Gradient, GradientKind, Source, Spread};
use crate::geom::{ellipse_outline, flatten_path, polylines_bounds, rect_outline, Bounds, Point, Polyline};
use crate::image::RasterImage;
use crate::raster::{coverage, FillRule};
use crate::stroke::stroke_outline;
use crate::style::{element_opacity, stop_color, Paint, Style};
use crate::Error;

/// Viewport used when the root has neither `viewBox` nor usable dimensions.
pub const DEFAULT_VIEWBOX: [f64; 4] = [0.0, 0.0, 128.0, 128.0];

/// Device-pixel flattening tolerance.
const TOLERANCE_PX: f64 = 0.05;

const MAX_USE_DEPTH: usize = 24;

#[derive(Clone)]
struct State {
    ctm: TransformMatrix,
    style: Style,
    viewport: (f64, f64),
    clip: Option<Rc<Vec<f32>>>,
    use_depth: usize,
}

struct Renderer<'a> {
    ids: HashMap<&'a str, &'a Element>,
    width: usize,
    height: usize,
}

fn invalid(el: &Element, attribute: &str, value: impl ToString) -> Error {
    Error::InvalidAttribute { element: el.name.clone(), attribute: attribute.to_string(), value: value.to_string() }
}

/// Resolves a length attribute; `Ok(None)` when absent.
fn length(el: &Element, name: &str, viewport: (f64, f64)) -> Result<Option<f64>, Error> {
    let Some(value) = el.attr(name) else {
        return Ok(None);
    };
    let v = match value {
        AttrValue::Numbers(n) => n.as_number(),
        AttrValue::Opaque(text) => Length::parse(text).map(|l| l.to_user(viewport, axis_of(name))),
        _ => None,
    };
    match v {
        Some(v) if v.is_finite() => Ok(Some(v)),
        _ => Err(invalid(el, name, value)),
    }
}

fn non_negative(el: &Element, name: &str, viewport: (f64, f64)) -> Result<Option<f64>, Error> {
    match length(el, name, viewport)? {
        Some(v) if v < 0.0 => Err(invalid(el, name, v)),
        other => Ok(other),
    }
}

fn local_transform(el: &Element, name: &str) -> Result<TransformMatrix, Error> {
    match el.attr(name) {
        None => Ok(TransformMatrix::IDENTITY),
        Some(AttrValue::Transform(t)) => {
            let m = t.to_matrix();
            if m.is_finite() {
                Ok(m)
            } else {
                Err(invalid(el, name, t))
            }
        }
        Some(AttrValue::Opaque(s)) if s.trim().is_empty() => Ok(TransformMatrix::IDENTITY),
        Some(other) => Err(invalid(el, name, other)),
    }
}

fn url_ref(value: Option<&AttrValue>) -> Option<String> {
    let text = value?.to_string();
    let rest = text.trim().strip_prefix("url(")?;
    let inner = rest.split(')').next()?.trim().trim_matches(|c| c == '"' || c == '\'');
    inner.strip_prefix('#').map(str::to_string)
}

fn viewbox(el: &Element) -> Result<Option<[f64; 4]>, Error> {
    let Some(value) = el.attr("viewBox") else {
        return Ok(None);
    };
    let nums: Option<Vec<f64>> = value.as_numbers().map(|n| n.values().copied().collect());
    match nums.as_deref() {
        Some(&[x, y, w, h]) if w > 0.0 && h > 0.0 && [x, y, w, h].iter().all(|v| v.is_finite()) => Ok(Some([x, y, w, h])),
        _ => Err(invalid(el, "viewBox", value)),
    }
}

/// Maps `vb` into the viewport rectangle per `preserveAspectRatio`.
fn viewbox_transform(vb: [f64; 4], port: [f64; 4], par: Option<&str>) -> TransformMatrix {
    let [vx, vy, vw, vh] = vb;
    let [px, py, pw, ph] = port;
    let par = par.unwrap_or("xMidYMid meet").trim();
    let mut parts = par.split_whitespace();
    let mut align = parts.next().unwrap_or("xMidYMid");
    if align == "defer" {
        align = parts.next().unwrap_or("xMidYMid");
    }
    let slice = parts.next() == Some("slice");
    let (sx, sy) = (pw / vw, ph / vh);
    if align == "none" {
        return TransformMatrix::new(sx, 0.0, 0.0, sy, px - vx * sx, py - vy * sy);
    }
    let s = if slice { sx.max(sy) } else { sx.min(sy) };
    let free_x = pw - vw * s;
    let free_y = ph - vh * s;
    let fx = if align.contains("xMid") {
        0.5
    } else if align.contains("xMax") {
        1.0
    } else {
        0.0
    };
    let fy = if align.contains("YMid") {
        0.5
    } else if align.contains("YMax") {
        1.0
    } else {
        0.0
    };
    TransformMatrix::new(s, 0.0, 0.0, s, px + free_x * fx - vx * s, py + free_y * fy - vy * s)
}

fn bbox_matrix(b: &Bounds) -> TransformMatrix {
    TransformMatrix::new(b.width(), 0.0, 0.0, b.height(), b.min_x, b.min_y)
}

fn transform_bounds(b: &Bounds, m: &TransformMatrix) -> Bounds {
    let corners = [m.apply(b.min_x, b.min_y), m.apply(b.max_x, b.min_y), m.apply(b.max_x, b.max_y), m.apply(b.min_x, b.max_y)];
    Bounds::of_points(&corners).expect("four corners")
}

fn tolerance_for(ctm: &TransformMatrix) -> f64 {
    let s = ctm.mean_scale();
    if s > 0.0 {
        TOLERANCE_PX / s
    } else {
        TOLERANCE_PX
    }
}

fn combine_masks(a: Option<&Rc<Vec<f32>>>, b: Vec<f32>) -> Rc<Vec<f32>> {
    match a {
        None => Rc::new(b),
        Some(a) => Rc::new(a.iter().zip(b).map(|(x, y)| x * y).collect()),
    }
}

/// Renders a static document onto a `size × size` canvas over white.
pub fn render(doc: &Document, size: u32) -> Result<RasterImage, Error> {
    if size < crate::MIN_SIZE {
        return Err(Error::InvalidSize(size));
    }
    let mut ids = HashMap::new();
    for el in doc.root.descendants() {
        if let Some(id) = el.id() {
            ids.entry(id).or_insert(el);
        }
    }
    let r = Renderer { ids, width: size as usize, height: size as usize };
    let mut canvas = Canvas::new(r.width, r.height);
    r.render_root(&doc.root, &mut canvas)?;
    Ok(canvas.to_image())
}

/// The root viewport in user units: `viewBox`, else absolute
/// `width`/`height`, else [`DEFAULT_VIEWBOX`].
pub fn root_viewbox(root: &Element) -> Result<[f64; 4], Error> {
    if let Some(vb) = viewbox(root)? {
        return Ok(vb);
    }
    let dim = |name: &str| -> Option<f64> {
        match root.attr(name)? {
            AttrValue::Numbers(n) => n.as_number(),
            AttrValue::Opaque(t) => Length::parse(t)
                .filter(|l| l.unit != svgbench_core::length::LengthUnit::Percent)
                .map(|l| l.to_user((0.0, 0.0), axis_of(name))),
            _ => None,
        }
    };
    match (dim("width"), dim("height")) {
        (Some(w), Some(h)) if w > 0.0 && h > 0.0 => Ok([0.0, 0.0, w, h]),
        _ => Ok(DEFAULT_VIEWBOX),
    }
}

impl<'a> Renderer<'a> {
    fn render_root(&self, root: &'a Element, canvas: &mut Canvas) -> Result<(), Error> {
        let vb = root_viewbox(root)?;
        let port = [0.0, 0.0, self.width as f64, self.height as f64];
        let par = root.attr("preserveAspectRatio").map(|v| v.to_string());
        let fit = viewbox_transform(vb, port, par.as_deref());
        let ctm = local_transform(root, "transform")?.compose(&fit);
        let clip_poly = vec![
            fit.apply(vb[0], vb[1]),
            fit.apply(vb[0] + vb[2], vb[1]),
            fit.apply(vb[0] + vb[2], vb[1] + vb[3]),
            fit.apply(vb[0], vb[1] + vb[3]),
        ];
        let covers_canvas = clip_poly.iter().all(|&(x, y)| (x <= 0.0 || x >= self.width as f64) && (y <= 0.0 || y >= self.height as f64));
        let clip = if covers_canvas { None } else { Some(Rc::new(self.polygon_mask(&[clip_poly], FillRule::NonZero))) };
        let state = State { ctm, style: Style::default().inherit(root), viewport: (vb[2], vb[3]), clip, use_depth: 0 };
        self.render_with_effects(root, &state, canvas, |r, st, c| r.render_children(root, st, c))
    }

    fn polygon_mask(&self, polys: &[Vec<Point>], rule: FillRule) -> Vec<f32> {
        match coverage(polys, rule, self.width, self.height) {
            Some(c) => c.to_mask(self.width, self.height),
            None => vec![0.0; self.width * self.height],
        }
    }

    fn render_children(&self, el: &'a Element, state: &State, canvas: &mut Canvas) -> Result<(), Error> {
        if el.kind == ElementKind::Switch {
            if let Some(child) = el.child_elements().find(|c| is_rendered_kind(c.kind)) {
                self.render_element(child, state, canvas)?;
            }
            return Ok(());
        }
        for child in el.child_elements() {
            self.render_element(child, state, canvas)?;
        }
        Ok(())
    }

    fn render_element(&self, el: &'a Element, parent: &State, canvas: &mut Canvas) -> Result<(), Error> {
        if !is_rendered_kind(el.kind) {
            return Ok(());
        }
        let local = local_transform(el, "transform")?;
        if el.attr_text("display").as_deref().map(str::trim) == Some("none") {
            return Ok(());
        }
        if local.determinant() == 0.0 {
            return Ok(());
        }
        let state = State { ctm: parent.ctm.compose(&local), style: parent.style.inherit(el), ..parent.clone() };
        self.render_with_effects(el, &state, canvas, |r, st, c| r.render_content(el, st, c))
    }

    /// Applies opacity, clip-path, mask and filter around `draw`.
    fn render_with_effects(
        &self,
        el: &'a Element,
        state: &State,
        canvas: &mut Canvas,
        draw: impl FnOnce(&Self, &State, &mut Canvas) -> Result<(), Error>,
    ) -> Result<(), Error> {
        let opacity = element_opacity(el);
        if opacity <= 0.0 {
            return Ok(());
        }
        let clip_el = url_ref(el.attr("clip-path")).and_then(|id| self.ids.get(id.as_str()).copied());
        let mask_el = url_ref(el.attr("mask")).and_then(|id| self.ids.get(id.as_str()).copied());
        let blur = url_ref(el.attr("filter")).and_then(|id| self.ids.get(id.as_str()).copied()).and_then(|f| self.blur_of(f, &state.ctm));
        let clip_el = clip_el.filter(|c| c.kind == ElementKind::ClipPath);
        let mask_el = mask_el.filter(|m| m.kind == ElementKind::Mask);

        let layered = opacity < 1.0 || mask_el.is_some() || blur.is_some();
        let needs_bbox = clip_el.is_some() || mask_el.is_some();
        let bbox = if needs_bbox { self.element_bounds(el, state)? } else { None };
        let clip_mask = match clip_el {
            Some(c) => Some(self.clip_mask(c, state, bbox.as_ref())?),
            None => None,
        };

        if !layered {
            let mut inner = state.clone();
            if let Some(m) = clip_mask {
                inner.clip = Some(combine_masks(state.clip.as_ref(), m));
            }
            return draw(self, &inner, canvas);
        }

        let mut layer = Canvas::new(self.width, self.height);
        let mut inner = state.clone();
        inner.clip = None;
        draw(self, &inner, &mut layer)?;
        if let Some((sx, sy)) = blur {
            layer.blur(sx, sy);
        }
        let mut mask: Option<Vec<f32>> = state.clip.as_ref().map(|c| c.as_ref().clone());
        let mut apply = |m: Vec<f32>| {
            mask = Some(match mask.take() {
                None => m,
                Some(prev) => prev.iter().zip(m).map(|(a, b)| a * b).collect(),
            });
        };
        if let Some(m) = clip_mask {
            apply(m);
        }
        if let Some(m) = mask_el {
            apply(self.mask_values(m, state, bbox.as_ref())?);
        }
        canvas.composite(&layer, opacity as f32, mask.as_deref());
        Ok(())
    }

    fn render_content(&self, el: &'a Element, state: &State, canvas: &mut Canvas) -> Result<(), Error> {
        match el.kind {
            ElementKind::G | ElementKind::A | ElementKind::Switch => self.render_children(el, state, canvas),
            ElementKind::Svg => self.render_nested_viewport(el, el, state, canvas, None),
            ElementKind::Use => self.render_use(el, state, canvas),
            kind if kind.is_shape() => self.draw_shape(el, state, canvas),
            _ => Ok(()),
        }
    }

    fn render_use(&self, el: &'a Element, state: &State, canvas: &mut Canvas) -> Result<(), Error> {
        if state.use_depth >= MAX_USE_DEPTH {
            return Ok(());
        }
        let Some(target) =
            el.href().and_then(|h| h.trim().strip_prefix('#').map(str::to_string)).and_then(|id| self.ids.get(id.as_str()).copied())
        else {
            return Ok(());
        };
        let x = length(el, "x", state.viewport)?.unwrap_or(0.0);
        let y = length(el, "y", state.viewport)?.unwrap_or(0.0);
        let mut inner = state.clone();
        inner.ctm = state.ctm.compose(&TransformMatrix::translate(x, y));
        inner.use_depth += 1;
        match target.kind {
            ElementKind::Symbol | ElementKind::Svg => {
                let size = (non_negative(el, "width", state.viewport)?, non_negative(el, "height", state.viewport)?);
                let style = inner.style.inherit(target);
                let st = State { style, ..inner };
                self.render_with_effects(target, &st, canvas, |r, s, c| r.render_nested_viewport(target, target, s, c, Some(size)))
            }
            _ => self.render_element(target, &inner, canvas),
        }
    }

    /// Establishes the viewport of a nested `svg` or instanced `symbol`.
    fn render_nested_viewport(
        &self,
        el: &'a Element,
        content: &'a Element,
        state: &State,
        canvas: &mut Canvas,
        use_size: Option<(Option<f64>, Option<f64>)>,
    ) -> Result<(), Error> {
        let vp = state.viewport;
        let (x, y) = if el.kind == ElementKind::Symbol {
            (0.0, 0.0)
        } else {
            (length(el, "x", vp)?.unwrap_or(0.0), length(el, "y", vp)?.unwrap_or(0.0))
        };
        let (uw, uh) = use_size.unwrap_or((None, None));
        let w = match uw {
            Some(w) => w,
            None => non_negative(el, "width", vp)?.unwrap_or(vp.0),
        };
        let h = match uh {
            Some(h) => h,
            None => non_negative(el, "height", vp)?.unwrap_or(vp.1),
        };
        if w <= 0.0 || h <= 0.0 {
            return Ok(());
        }
        let mut inner = state.clone();
        let vb = viewbox(el)?;
        let fit = match vb {
            Some(vb) => {
                let par = el.attr("preserveAspectRatio").map(|v| v.to_string());
                inner.viewport = (vb[2], vb[3]);
                viewbox_transform(vb, [x, y, w, h], par.as_deref())
            }
            None => {
                inner.viewport = (w, h);
                TransformMatrix::translate(x, y)
            }
        };
        inner.ctm = state.ctm.compose(&fit);
        let overflow_visible = matches!(el.attr_text("overflow").as_deref(), Some("visible") | Some("auto"));
        if !overflow_visible {
            let m = &state.ctm;
            let poly = vec![m.apply(x, y), m.apply(x + w, y), m.apply(x + w, y + h), m.apply(x, y + h)];
            let mask = self.polygon_mask(&[poly], FillRule::NonZero);
            inner.clip = Some(combine_masks(state.clip.as_ref(), mask));
        }
        self.render_children(content, &inner, canvas)
    }

    fn draw_shape(&self, el: &'a Element, state: &State, canvas: &mut Canvas) -> Result<(), Error> {
        let tol = tolerance_for(&state.ctm);
        let Some(lines) = shape_geometry(el, state.viewport, tol)? else {
            return Ok(());
        };
        let style = &state.style;
        if !style.visible {
            return Ok(());
        }
        let clip = state.clip.as_deref().map(|v| v.as_slice());
        let bounds = polylines_bounds(&lines);

        if el.kind != ElementKind::Line {
            let fill = style.resolve(&style.fill);
            if let Some(source) = self.paint_source(&fill, bounds.as_ref(), state)? {
                let polys: Vec<Vec<Point>> = lines.iter().map(|l| l.transform(&state.ctm).points).collect();
                if let Some(cov) = coverage(&polys, style.fill_rule, self.width, self.height) {
                    canvas.fill(&cov, clip, &source, style.fill_opacity as f32);
                }
            }
        }

        let stroke = style.resolve(&style.stroke_paint);
        if style.stroke.width > 0.0 {
            if let Some(source) = self.paint_source(&stroke, bounds.as_ref(), state)? {
                let pieces = stroke_outline(&lines, &style.stroke, tol);
                let polys: Vec<Vec<Point>> = pieces.iter().map(|p| p.iter().map(|&(x, y)| state.ctm.apply(x, y)).collect()).collect();
                if let Some(cov) = coverage(&polys, FillRule::NonZero, self.width, self.height) {
                    canvas.fill(&cov, clip, &source, style.stroke_opacity as f32);
                }
            }
        }
        Ok(())
    }

    fn paint_source(&self, paint: &Paint, bbox: Option<&Bounds>, state: &State) -> Result<Option<Source>, Error> {
        match paint {
            Paint::None => Ok(None),
            Paint::Rgba(c) => Ok(Some(Source::solid(*c))),
            Paint::CurrentColor => Ok(Some(Source::solid(state.style.color))),
            Paint::Server(id, fallback) => {
                let server = self
                    .ids
                    .get(id.as_str())
                    .copied()
                    .filter(|e| matches!(e.kind, ElementKind::LinearGradient | ElementKind::RadialGradient));
                match server {
                    Some(g) => self.gradient_source(g, bbox, state),
                    None => match fallback {
                        Some(f) => self.paint_source(&state.style.resolve(f), bbox, state),
                        None => Ok(None),
                    },
                }
            }
        }
    }

    /// Follows `href` to collect the gradient chain, nearest first.
    fn gradient_chain(&self, g: &'a Element) -> Vec<&'a Element> {
        let mut chain = vec![g];
        let mut current = g;
        while chain.len() < 16 {
            let Some(next) = current
                .href()
                .and_then(|h| h.trim().strip_prefix('#').map(str::to_string))
                .and_then(|id| self.ids.get(id.as_str()).copied())
                .filter(|e| matches!(e.kind, ElementKind::LinearGradient | ElementKind::RadialGradient))
            else {
                break;
            };
            if chain.iter().any(|e| std::ptr::eq(*e, next)) {
                break;
            }
            chain.push(next);
            current = next;
        }
        chain
    }

    fn gradient_source(&self, g: &'a Element, bbox: Option<&Bounds>, state: &State) -> Result<Option<Source>, Error> {
        let chain = self.gradient_chain(g);
        let attr = |name: &str| chain.iter().find_map(|e| e.attr(name));
        let bbox_units = attr("gradientUnits").map(|v| v.to_string()).as_deref() != Some("userSpaceOnUse");

        let Some(stop_parent) = chain.iter().find(|e| e.child_elements().any(|c| c.kind == ElementKind::Stop)) else {
            return Ok(None);
        };
        let stop_style = Style::default();
        let mut stops: Vec<(f64, [f64; 4])> = Vec::new();
        for stop in stop_parent.child_elements().filter(|c| c.kind == ElementKind::Stop) {
            let offset = match stop.attr("offset") {
                Some(AttrValue::Numbers(n)) => n.as_number().unwrap_or(0.0),
                Some(v) => {
                    let t = v.to_string();
                    match t.trim().strip_suffix('%') {
                        Some(p) => p.trim().parse::<f64>().map(|p| p / 100.0).unwrap_or(0.0),
                        None => t.trim().parse().unwrap_or(0.0),
                    }
                }
                None => 0.0,
            };
            let prev = stops.last().map(|s| s.0).unwrap_or(0.0);
            stops.push((offset.clamp(0.0, 1.0).max(prev), stop_color(stop, &stop_style)));
        }
        if stops.len() == 1 {
            return Ok(Some(Source::solid(stops[0].1)));
        }

        let units = if bbox_units {
            match bbox {
                Some(b) if b.width() > 0.0 && b.height() > 0.0 => bbox_matrix(b),
                _ => return Ok(None),
            }
        } else {
            TransformMatrix::IDENTITY
        };
        let basis = if bbox_units { (1.0, 1.0) } else { state.viewport };
        let coord = |name: &str, default: f64| -> f64 {
            match attr(name) {
                Some(AttrValue::Numbers(n)) => n.as_number().unwrap_or(default),
                Some(v) => match Length::parse(&v.to_string()) {
                    Some(l) if bbox_units && l.unit == svgbench_core::length::LengthUnit::Percent => l.value / 100.0,
                    Some(l) => l.to_user(basis, axis_of(name)),
                    None => default,
                },
                None => default,
            }
        };
        let (w, h) = basis;
        let kind = if chain[0].kind == ElementKind::LinearGradient {
            GradientKind::Linear { x1: coord("x1", 0.0), y1: coord("y1", 0.0), x2: coord("x2", w), y2: coord("y2", 0.0) }
        } else {
            let diag = ((w * w + h * h) / 2.0).sqrt();
            let cx = coord("cx", 0.5 * w);
            let cy = coord("cy", 0.5 * h);
            GradientKind::Radial { cx, cy, r: coord("r", 0.5 * diag), fx: coord("fx", cx), fy: coord("fy", cy), fr: coord("fr", 0.0) }
        };
        let spread = match attr("spreadMethod").map(|v| v.to_string()).as_deref() {
            Some("reflect") => Spread::Reflect,
            Some("repeat") => Spread::Repeat,
            _ => Spread::Pad,
        };
        let gradient_transform = match chain.iter().find(|e| e.has_attr("gradientTransform")) {
            Some(e) => local_transform(e, "gradientTransform")?,
            None => TransformMatrix::IDENTITY,
        };
        let to_device = state.ctm.compose(&units).compose(&gradient_transform);
        let Some(device_to_gradient) = to_device.inverse() else {
            return Ok(None);
        };
        Ok(Some(Source::Gradient(Box::new(Gradient { kind, stops, spread, device_to_gradient }))))
    }

    /// Union of the clip path's children as a full-canvas mask.
    fn clip_mask(&self, clip: &'a Element, state: &State, bbox: Option<&Bounds>) -> Result<Vec<f32>, Error> {
        let mut ctm = state.ctm.compose(&local_transform(clip, "transform")?);
        if clip.attr_text("clipPathUnits").as_deref() == Some("objectBoundingBox") {
            match bbox {
                Some(b) if b.width() > 0.0 && b.height() > 0.0 => ctm = ctm.compose(&bbox_matrix(b)),
                _ => return Ok(vec![0.0; self.width * self.height]),
            }
        }
        let mut mask = vec![0.0f32; self.width * self.height];
        let base_style = Style::default().inherit(clip);
        for child in clip.child_elements() {
            let (shape, extra) = match child.kind {
                ElementKind::Use => {
                    let target = child
                        .href()
                        .and_then(|h| h.trim().strip_prefix('#').map(str::to_string))
                        .and_then(|id| self.ids.get(id.as_str()).copied());
                    match target {
                        Some(t) if t.kind.is_shape() => {
                            let x = length(child, "x", state.viewport)?.unwrap_or(0.0);
                            let y = length(child, "y", state.viewport)?.unwrap_or(0.0);
                            (t, local_transform(child, "transform")?.compose(&TransformMatrix::translate(x, y)))
                        }
                        _ => continue,
                    }
                }
                k if k.is_shape() => (child, TransformMatrix::IDENTITY),
                _ => continue,
            };
            if child.attr_text("display").as_deref() == Some("none") {
                continue;
            }
            let style = base_style.inherit(child);
            let style = if std::ptr::eq(shape, child) { style } else { style.inherit(shape) };
            if !style.visible {
                continue;
            }
            let m = ctm.compose(&extra).compose(&local_transform(shape, "transform")?);
            let tol = tolerance_for(&m);
            let Some(lines) = shape_geometry(shape, state.viewport, tol)? else {
                continue;
            };
            let polys: Vec<Vec<Point>> = lines.iter().map(|l| l.transform(&m).points).collect();
            if let Some(cov) = coverage(&polys, style.clip_rule, self.width, self.height) {
                for y in 0..cov.height {
                    for x in 0..cov.width {
                        let a = cov.data[y * cov.width + x];
                        let i = (cov.y0 + y) * self.width + cov.x0 + x;
                        mask[i] += a * (1.0 - mask[i]);
                    }
                }
            }
        }
        Ok(mask)
    }

    fn mask_values(&self, mask_el: &'a Element, state: &State, bbox: Option<&Bounds>) -> Result<Vec<f32>, Error> {
        let user_units = mask_el.attr_text("maskUnits").as_deref() == Some("userSpaceOnUse");
        let bbox_content = mask_el.attr_text("maskContentUnits").as_deref() == Some("objectBoundingBox");
        let region = if user_units {
            let vp = state.viewport;
            let x = length(mask_el, "x", vp)?.unwrap_or(-0.1 * vp.0);
            let y = length(mask_el, "y", vp)?.unwrap_or(-0.1 * vp.1);
            let w = length(mask_el, "width", vp)?.unwrap_or(1.2 * vp.0);
            let h = length(mask_el, "height", vp)?.unwrap_or(1.2 * vp.1);
            Some([x, y, w, h])
        } else {
            bbox.filter(|b| b.width() > 0.0 && b.height() > 0.0).map(|b| {
                let frac = |name: &str, default: f64| -> f64 {
                    match mask_el.attr(name) {
                        Some(AttrValue::Numbers(n)) => n.as_number().unwrap_or(default),
                        Some(v) => Length::parse(&v.to_string())
                            .map(|l| if l.unit == svgbench_core::length::LengthUnit::Percent { l.value / 100.0 } else { l.value })
                            .unwrap_or(default),
                        None => default,
                    }
                };
                [
                    b.min_x + frac("x", -0.1) * b.width(),
                    b.min_y + frac("y", -0.1) * b.height(),
                    frac("width", 1.2) * b.width(),
                    frac("height", 1.2) * b.height(),
                ]
            })
        };
        let Some([x, y, w, h]) = region else {
            return Ok(vec![0.0; self.width * self.height]);
        };
        let mut inner = state.clone();
        inner.clip = None;
        inner.style = Style::default().inherit(mask_el);
        if bbox_content {
            match bbox {
                Some(b) if b.width() > 0.0 && b.height() > 0.0 => inner.ctm = inner.ctm.compose(&bbox_matrix(b)),
                _ => return Ok(vec![0.0; self.width * self.height]),
            }
        }
        let mut layer = Canvas::new(self.width, self.height);
        self.render_children(mask_el, &inner, &mut layer)?;
        let m = &state.ctm;
        let region_poly = vec![m.apply(x, y), m.apply(x + w, y), m.apply(x + w, y + h), m.apply(x, y + h)];
        let region_mask = self.polygon_mask(&[region_poly], FillRule::NonZero);
        Ok(layer.luminance_mask().into_iter().zip(region_mask).map(|(a, b)| a * b).collect())
    }

    /// Standard deviations in device pixels when the filter is a plain
    /// Gaussian blur.
    fn blur_of(&self, filter: &Element, ctm: &TransformMatrix) -> Option<(f64, f64)> {
        if filter.kind != ElementKind::Filter {
            return None;
        }
        let mut prims = filter.child_elements();
        let first = prims.next()?;
        if first.kind != ElementKind::FeGaussianBlur || prims.next().is_some() {
            return None;
        }
        let sd: Vec<f64> = match first.attr("stdDeviation")? {
            AttrValue::Numbers(n) => n.values().copied().collect(),
            _ => return None,
        };
        let (sx, sy) = match sd[..] {
            [s] => (s, s),
            [a, b] => (a, b),
            _ => return None,
        };
        let scale_x = (ctm.a * ctm.a + ctm.b * ctm.b).sqrt();
        let scale_y = (ctm.c * ctm.c + ctm.d * ctm.d).sqrt();
        Some((sx.max(0.0) * scale_x, sy.max(0.0) * scale_y))
    }

    /// Geometry bounds of an element's subtree in its own user space.
    fn element_bounds(&self, el: &'a Element, state: &State) -> Result<Option<Bounds>, Error> {
        self.bounds_in(el, state.viewport, &TransformMatrix::IDENTITY, 0)
    }

    fn bounds_in(&self, el: &'a Element, vp: (f64, f64), m: &TransformMatrix, depth: usize) -> Result<Option<Bounds>, Error> {
        if depth > MAX_USE_DEPTH {
            return Ok(None);
        }
        if el.kind.is_shape() {
            let lines = shape_geometry(el, vp, 0.01)?;
            return Ok(lines.as_deref().and_then(polylines_bounds).map(|b| transform_bounds(&b, m)));
        }
        let mut acc: Option<Bounds> = None;
        let children: Vec<&'a Element> = match el.kind {
            ElementKind::Use => {
                let target = el
                    .href()
                    .and_then(|h| h.trim().strip_prefix('#').map(str::to_string))
                    .and_then(|id| self.ids.get(id.as_str()).copied());
                let x = length(el, "x", vp)?.unwrap_or(0.0);
                let y = length(el, "y", vp)?.unwrap_or(0.0);
                if let Some(t) = target {
                    let tm = m.compose(&TransformMatrix::translate(x, y)).compose(&local_transform(t, "transform")?);
                    return self.bounds_in(t, vp, &tm, depth + 1);
                }
                Vec::new()
            }
            ElementKind::G | ElementKind::A | ElementKind::Svg | ElementKind::Switch | ElementKind::Symbol => el.child_elements().collect(),
            _ => Vec::new(),
        };
        for child in children {
            if !is_rendered_kind(child.kind) && !child.kind.is_shape() {
                continue;
            }
            let cm = m.compose(&local_transform(child, "transform")?);
            if let Some(b) = self.bounds_in(child, vp, &cm, depth + 1)? {
                acc = Some(match acc {
                    Some(a) => a.union(b),
                    None => b,
                });
            }
        }
        Ok(acc)
    }
}

fn is_rendered_kind(kind: ElementKind) -> bool {
    matches!(kind, ElementKind::Svg | ElementKind::G | ElementKind::A | ElementKind::Switch | ElementKind::Use) || kind.is_shape()
}

/// Outline of a basic shape in its user space; `None` when the shape has
/// zero extent.
pub fn shape_geometry(el: &Element, vp: (f64, f64), tol: f64) -> Result<Option<Vec<Polyline>>, Error> {
    let get = |name: &str| length(el, name, vp).map(|v| v.unwrap_or(0.0));
    let lines = match el.kind {
        ElementKind::Path => match el.attr("d") {
            None => return Ok(None),
            Some(AttrValue::Path(p)) => flatten_path(p, tol),
            Some(AttrValue::Opaque(s)) if s.trim().is_empty() => return Ok(None),
            Some(other) => return Err(invalid(el, "d", other)),
        },
        ElementKind::Rect => {
            let w = non_negative(el, "width", vp)?.unwrap_or(0.0);
            let h = non_negative(el, "height", vp)?.unwrap_or(0.0);
            if w == 0.0 || h == 0.0 {
                return Ok(None);
            }
            let rx = non_negative(el, "rx", vp)?;
            let ry = non_negative(el, "ry", vp)?;
            let (rx, ry) = match (rx, ry) {
                (None, None) => (0.0, 0.0),
                (Some(r), None) | (None, Some(r)) => (r, r),
                (Some(a), Some(b)) => (a, b),
            };
            vec![rect_outline(get("x")?, get("y")?, w, h, rx.min(w / 2.0), ry.min(h / 2.0), tol)]
        }
        ElementKind::Circle => {
            let r = non_negative(el, "r", vp)?.unwrap_or(0.0);
            if r == 0.0 {
                return Ok(None);
            }
            vec![ellipse_outline(get("cx")?, get("cy")?, r, r, tol)]
        }
        ElementKind::Ellipse => {
            let rx = non_negative(el, "rx", vp)?;
            let ry = non_negative(el, "ry", vp)?;
            let (rx, ry) = match (rx, ry) {
                (Some(a), Some(b)) => (a, b),
                (Some(r), None) | (None, Some(r)) => (r, r),
                (None, None) => (0.0, 0.0),
            };
            if rx == 0.0 || ry == 0.0 {
                return Ok(None);
            }
            vec![ellipse_outline(get("cx")?, get("cy")?, rx, ry, tol)]
        }
        ElementKind::Line => vec![Polyline { points: vec![(get("x1")?, get("y1")?), (get("x2")?, get("y2")?)], closed: false }],
        ElementKind::Polyline | ElementKind::Polygon => {
            let values: Vec<f64> = match el.attr("points") {
                None => return Ok(None),
                Some(AttrValue::Numbers(n)) => n.values().copied().collect(),
                Some(AttrValue::Opaque(s)) if s.trim().is_empty() => return Ok(None),
                Some(other) => return Err(invalid(el, "points", other)),
            };
            let points: Vec<Point> = values.chunks_exact(2).map(|p| (p[0], p[1])).collect();
            if points.is_empty() {
                return Ok(None);
            }
            vec![Polyline { points, closed: el.kind == ElementKind::Polygon }]
        }
        _ => return Ok(None),
    };
    if lines.iter().all(|l| l.points.is_empty()) {
        return Ok(None);
    }
    Ok(Some(lines))
}
