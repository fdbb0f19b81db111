//! Computed presentation properties with inheritance.

use svgbench_core::{AttrValue, Color, Element};

use crate::raster::FillRule;
use crate::stroke::{LineCap, LineJoin, StrokeStyle};

#[derive(Debug, Clone, PartialEq)]
pub enum Paint {
    None,
    Rgba([f64; 4]),
    CurrentColor,
    /// `url(#id)` with an optional fallback used when the reference does not
    /// resolve.
    Server(String, Option<Box<Paint>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub fill: Paint,
    pub fill_opacity: f64,
    pub fill_rule: FillRule,
    pub stroke_paint: Paint,
    pub stroke_opacity: f64,
    pub stroke: StrokeStyle,
    pub color: [f64; 4],
    pub visible: bool,
    pub clip_rule: FillRule,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            fill: Paint::Rgba([0.0, 0.0, 0.0, 1.0]),
            fill_opacity: 1.0,
            fill_rule: FillRule::NonZero,
            stroke_paint: Paint::None,
            stroke_opacity: 1.0,
            stroke: StrokeStyle::default(),
            color: [0.0, 0.0, 0.0, 1.0],
            visible: true,
            clip_rule: FillRule::NonZero,
        }
    }
}

pub fn rgba(c: &Color) -> [f64; 4] {
    [c.r as f64 / 255.0, c.g as f64 / 255.0, c.b as f64 / 255.0, c.alpha]
}

fn text(value: &AttrValue) -> String {
    value.to_string().trim().to_string()
}

pub fn parse_paint(value: &AttrValue) -> Option<Paint> {
    if let AttrValue::Color(c) = value {
        return Some(Paint::Rgba(rgba(c)));
    }
    let raw = text(value);
    match raw.as_str() {
        "none" => return Some(Paint::None),
        "currentColor" => return Some(Paint::CurrentColor),
        _ => {}
    }
    if let Some(rest) = raw.strip_prefix("url(") {
        let close = rest.find(')')?;
        let inner = rest[..close].trim().trim_matches(|c| c == '"' || c == '\'');
        let id = inner.strip_prefix('#')?.to_string();
        let tail = rest[close + 1..].trim();
        let fallback = if tail.is_empty() { None } else { parse_paint(&AttrValue::opaque(tail)).map(Box::new) };
        return Some(Paint::Server(id, fallback));
    }
    raw.parse::<Color>().ok().map(|c| Paint::Rgba(rgba(&c)))
}

fn number(value: &AttrValue) -> Option<f64> {
    value.as_number().or_else(|| {
        let raw = text(value);
        let raw = raw.strip_suffix("px").unwrap_or(&raw);
        raw.parse().ok()
    })
}

fn opacity(value: &AttrValue) -> Option<f64> {
    let raw = text(value);
    if let Some(p) = raw.strip_suffix('%') {
        return p.trim().parse::<f64>().ok().map(|v| (v / 100.0).clamp(0.0, 1.0));
    }
    number(value).map(|v| v.clamp(0.0, 1.0))
}

fn fill_rule(value: &AttrValue) -> Option<FillRule> {
    match text(value).as_str() {
        "nonzero" => Some(FillRule::NonZero),
        "evenodd" => Some(FillRule::EvenOdd),
        _ => None,
    }
}

fn dash_array(value: &AttrValue) -> Option<Option<Vec<f64>>> {
    if text(value) == "none" {
        return Some(None);
    }
    let values: Vec<f64> = match value {
        AttrValue::Numbers(n) => n.values().copied().collect(),
        _ => text(value)
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.strip_suffix("px").unwrap_or(s).parse::<f64>())
            .collect::<Result<_, _>>()
            .ok()?,
    };
    if values.iter().any(|v| *v < 0.0 || !v.is_finite()) {
        return None;
    }
    Some((values.iter().sum::<f64>() > 0.0).then_some(values))
}

impl Style {
    /// Applies the element's own presentation attributes on top of the
    /// inherited style. Unparsable values are ignored.
    pub fn inherit(&self, el: &Element) -> Style {
        let mut s = self.clone();
        let get = |name: &str| el.attr(name).filter(|v| text(v) != "inherit");
        if let Some(c) = get("color").and_then(|v| match v {
            AttrValue::Color(c) => Some(rgba(c)),
            other => text(other).parse::<Color>().ok().map(|c| rgba(&c)),
        }) {
            s.color = c;
        }
        if let Some(p) = get("fill").and_then(parse_paint) {
            s.fill = p;
        }
        if let Some(v) = get("fill-opacity").and_then(opacity) {
            s.fill_opacity = v;
        }
        if let Some(r) = get("fill-rule").and_then(fill_rule) {
            s.fill_rule = r;
        }
        if let Some(r) = get("clip-rule").and_then(fill_rule) {
            s.clip_rule = r;
        }
        if let Some(p) = get("stroke").and_then(parse_paint) {
            s.stroke_paint = p;
        }
        if let Some(v) = get("stroke-opacity").and_then(opacity) {
            s.stroke_opacity = v;
        }
        if let Some(w) = get("stroke-width").and_then(number).filter(|w| *w >= 0.0) {
            s.stroke.width = w;
        }
        if let Some(v) = get("stroke-linecap") {
            s.stroke.cap = match text(v).as_str() {
                "round" => LineCap::Round,
                "square" => LineCap::Square,
                "butt" => LineCap::Butt,
                _ => s.stroke.cap,
            };
        }
        if let Some(v) = get("stroke-linejoin") {
            s.stroke.join = match text(v).as_str() {
                "round" => LineJoin::Round,
                "bevel" => LineJoin::Bevel,
                "miter" | "miter-clip" | "arcs" => LineJoin::Miter,
                _ => s.stroke.join,
            };
        }
        if let Some(m) = get("stroke-miterlimit").and_then(number).filter(|m| *m >= 1.0) {
            s.stroke.miter_limit = m;
        }
        if let Some(d) = get("stroke-dasharray").and_then(dash_array) {
            s.stroke.dashes = d;
        }
        if let Some(o) = get("stroke-dashoffset").and_then(number) {
            s.stroke.dash_offset = o;
        }
        if let Some(v) = get("visibility") {
            match text(v).as_str() {
                "visible" => s.visible = true,
                "hidden" | "collapse" => s.visible = false,
                _ => {}
            }
        }
        s
    }

    /// Resolves `currentColor` against the computed `color`.
    pub fn resolve(&self, paint: &Paint) -> Paint {
        match paint {
            Paint::CurrentColor => Paint::Rgba(self.color),
            other => other.clone(),
        }
    }
}

/// Non-inherited `opacity` of an element.
pub fn element_opacity(el: &Element) -> f64 {
    el.attr("opacity").and_then(opacity).unwrap_or(1.0)
}

/// `stop-color` × `stop-opacity` of a gradient stop, as straight RGBA.
pub fn stop_color(stop: &Element, inherited: &Style) -> [f64; 4] {
    let style = inherited.inherit(stop);
    let mut c = match stop.attr("stop-color") {
        Some(AttrValue::Color(c)) => rgba(c),
        Some(v) if text(v) == "currentColor" => style.color,
        Some(v) => text(v).parse::<Color>().map(|c| rgba(&c)).unwrap_or([0.0, 0.0, 0.0, 1.0]),
        None => [0.0, 0.0, 0.0, 1.0],
    };
    c[3] *= stop.attr("stop-opacity").and_then(opacity).unwrap_or(1.0);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use svgbench_core::parse_svg;

    fn style_of(src: &str) -> Style {
        let doc = parse_svg(src).unwrap();
        let mut s = Style::default().inherit(&doc.root);
        let mut el = &doc.root;
        while let Some(child) = el.child_elements().next() {
            s = s.inherit(child);
            el = child;
        }
        s
    }

    #[test]
    fn inheritance_chain() {
        let s = style_of(r#"<svg fill="red" stroke-width="3"><g stroke="blue"><rect fill="inherit" stroke-width="bogus"/></g></svg>"#);
        assert_eq!(s.fill, Paint::Rgba([1.0, 0.0, 0.0, 1.0]));
        assert_eq!(s.stroke_paint, Paint::Rgba([0.0, 0.0, 1.0, 1.0]));
        assert_eq!(s.stroke.width, 3.0);
    }

    #[test]
    fn paint_forms() {
        assert_eq!(parse_paint(&AttrValue::opaque("none")), Some(Paint::None));
        assert_eq!(
            parse_paint(&AttrValue::opaque("url(#g) red")),
            Some(Paint::Server("g".into(), Some(Box::new(Paint::Rgba([1.0, 0.0, 0.0, 1.0])))))
        );
        assert_eq!(parse_paint(&AttrValue::opaque("url('#a')")), Some(Paint::Server("a".into(), None)));
        assert_eq!(parse_paint(&AttrValue::opaque("notacolor")), None);
    }

    #[test]
    fn current_color_resolves() {
        let s = style_of(r#"<svg color="lime"><rect fill="currentColor"/></svg>"#);
        assert_eq!(s.resolve(&s.fill), Paint::Rgba([0.0, 1.0, 0.0, 1.0]));
    }

    #[test]
    fn dash_arrays() {
        let s = style_of(r#"<svg><path stroke-dasharray="4 2" stroke-dashoffset="1"/></svg>"#);
        assert_eq!(s.stroke.dashes, Some(vec![4.0, 2.0]));
        let s = style_of(r#"<svg stroke-dasharray="4"><path stroke-dasharray="0 0"/></svg>"#);
        assert_eq!(s.stroke.dashes, None);
    }
}
