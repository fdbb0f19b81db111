use std::collections::HashMap;

use crate::attr::{AttrValue, NumberList};
use crate::element::{Document, Element, ElementKind, Node};
use crate::length::{axis_of, Length, LengthUnit};
use crate::normalize::NormalizeConfig;
use crate::path::PathData;
use crate::transform::TransformOp;
use crate::Error;

/// The source coordinate window of a document.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceExtent {
    pub min_x: f64,
    pub min_y: f64,
    pub width: f64,
    pub height: f64,
}

/// Attributes holding user-space lengths or coordinates on ordinary elements.
const LENGTH_ATTRS: &[&str] = &[
    "x",
    "y",
    "width",
    "height",
    "cx",
    "cy",
    "r",
    "rx",
    "ry",
    "x1",
    "y1",
    "x2",
    "y2",
    "dx",
    "dy",
    "points",
    "stroke-width",
    "stroke-dasharray",
    "stroke-dashoffset",
    "font-size",
];

const GRADIENT_GEOMETRY: &[&str] = &["x1", "y1", "x2", "y2", "cx", "cy", "r", "fx", "fy", "fr"];

const REGION_ATTRS: &[&str] = &["x", "y", "width", "height"];

/// Reads the source window from `viewBox`, falling back to `width`/`height`.
pub fn source_extent(doc: &Document) -> Result<SourceExtent, Error> {
    let root = &doc.root;
    if let Some(vb) = root.attr("viewBox").and_then(AttrValue::as_numbers) {
        let v: Vec<f64> = vb.values().copied().collect();
        if let [min_x, min_y, width, height] = v[..] {
            if !(width > 0.0 && height > 0.0) {
                return Err(Error::DegenerateExtent { width, height });
            }
            return Ok(SourceExtent { min_x, min_y, width, height });
        }
    }
    let dimension = |name: &str| -> Option<f64> {
        let value = root.attr(name)?;
        if let Some(n) = value.as_number() {
            return Some(n);
        }
        let length = Length::parse(value.as_opaque()?)?;
        (length.unit != LengthUnit::Percent).then(|| length.to_user((0.0, 0.0), axis_of(name)))
    };
    match (dimension("width"), dimension("height")) {
        (Some(width), Some(height)) => {
            if !(width > 0.0 && height > 0.0) {
                return Err(Error::DegenerateExtent { width, height });
            }
            Ok(SourceExtent { min_x: 0.0, min_y: 0.0, width, height })
        }
        _ => Err(Error::NoExtent),
    }
}

/// Maps the document onto `cfg.target_canvas` with a uniform scale
/// `s = min(W / srcW, H / srcH)`, centering non-square sources.
///
/// Lengths and coordinates are rescaled in place on every element; element
/// transforms keep their linear part and have their translations scaled.
/// A centering offset, when needed, is applied by wrapping the drawable root
/// children in one `<g transform="translate(..)">`.
pub fn normalize_viewbox(doc: &Document, cfg: &NormalizeConfig) -> Result<Document, Error> {
    cfg.validate()?;
    let extent = source_extent(doc)?;
    let (target_w, target_h) = cfg.target_canvas;
    let s = (target_w / extent.width).min(target_h / extent.height);
    let offset_x = (target_w - s * extent.width) / 2.0 - s * extent.min_x;
    let offset_y = (target_h - s * extent.height) / 2.0 - s * extent.min_y;

    let mut out = doc.clone();
    let units = UnitsIndex::build(&doc.root);
    let scaler = Scaler { factor: s, viewport: (extent.width, extent.height), units: &units };

    let root = &mut out.root;
    for name in ["width", "height", "x", "y", "preserveAspectRatio"] {
        root.remove_attr(name);
    }
    scaler.scale_attrs(root, &["stroke-width", "stroke-dasharray", "stroke-dashoffset", "font-size"]);
    if let Some(AttrValue::Transform(t)) = root.attr_mut("transform") {
        t.ops.iter_mut().for_each(|op| op.scale_translation(s));
    }
    for child in root.child_elements_mut() {
        scaler.scale_element(child);
    }

    let viewbox = AttrValue::numbers(vec![0.0, 0.0, target_w, target_h]);
    if root.has_attr("viewBox") {
        root.set_attr("viewBox", viewbox);
    } else {
        let at = root.attributes.iter().take_while(|a| a.name == "xmlns" || a.name.starts_with("xmlns:")).count();
        root.attributes.insert(at, crate::element::Attribute { name: "viewBox".into(), value: viewbox });
    }

    if offset_x != 0.0 || offset_y != 0.0 {
        wrap_in_translation(root, offset_x, offset_y);
    }
    Ok(out)
}

fn wrap_in_translation(root: &mut Element, tx: f64, ty: f64) {
    let stays_outside = |e: &Element| {
        matches!(
            e.kind,
            ElementKind::Defs | ElementKind::Style | ElementKind::Script | ElementKind::Title | ElementKind::Desc | ElementKind::Metadata
        ) || e.kind.is_animation()
            || e.is_foreign()
    };
    let mut group = Element::new(ElementKind::G);
    group.set_attr("transform", AttrValue::Transform(crate::transform::TransformList::new(vec![TransformOp::Translate(tx, Some(ty))])));
    let mut kept = Vec::with_capacity(root.children.len());
    let mut group_at = None;
    for node in root.children.drain(..) {
        match node {
            Node::Element(e) if !stays_outside(&e) => {
                group_at.get_or_insert(kept.len());
                group.children.push(Node::Element(e));
            }
            other => kept.push(other),
        }
    }
    if let Some(at) = group_at {
        kept.insert(at, Node::Element(group));
    }
    root.children = kept;
}

/// Effective `*Units` attributes of paint servers and containers, following
/// `href` inheritance for gradients.
struct UnitsIndex {
    gradient_user_space: HashMap<String, bool>,
}

impl UnitsIndex {
    fn build(root: &Element) -> UnitsIndex {
        let mut own: HashMap<String, (Option<String>, Option<String>)> = HashMap::new();
        for el in root.descendants() {
            if matches!(el.kind, ElementKind::LinearGradient | ElementKind::RadialGradient) {
                if let Some(id) = el.id() {
                    let units = el.attr_text("gradientUnits");
                    let href = el.href().and_then(|h| h.strip_prefix('#').map(str::to_string));
                    own.insert(id.to_string(), (units, href));
                }
            }
        }
        let mut gradient_user_space = HashMap::new();
        for id in own.keys() {
            let mut current = id.clone();
            let mut user_space = false;
            for _ in 0..16 {
                match own.get(&current) {
                    Some((Some(units), _)) => {
                        user_space = units == "userSpaceOnUse";
                        break;
                    }
                    Some((None, Some(next))) => current = next.clone(),
                    _ => break,
                }
            }
            gradient_user_space.insert(id.clone(), user_space);
        }
        UnitsIndex { gradient_user_space }
    }

    fn gradient_in_user_space(&self, el: &Element) -> bool {
        if let Some(units) = el.attr_text("gradientUnits") {
            return units == "userSpaceOnUse";
        }
        if let Some(id) = el.id() {
            return self.gradient_user_space.get(id).copied().unwrap_or(false);
        }
        el.href()
            .and_then(|h| h.strip_prefix('#').map(str::to_string))
            .and_then(|h| self.gradient_user_space.get(&h).copied())
            .unwrap_or(false)
    }
}

struct Scaler<'a> {
    factor: f64,
    viewport: (f64, f64),
    units: &'a UnitsIndex,
}

fn is_user_space(el: &Element, attr: &str, default_user_space: bool) -> bool {
    match el.attr_text(attr) {
        Some(v) => v == "userSpaceOnUse",
        None => default_user_space,
    }
}

impl Scaler<'_> {
    fn scale_value(&self, name: &str, value: &mut AttrValue) {
        match value {
            AttrValue::Numbers(list) => list.values_mut().for_each(|v| *v *= self.factor),
            AttrValue::Path(path) => path.scale(self.factor),
            AttrValue::Opaque(text) => {
                if let Some(length) = Length::parse(text) {
                    let user = length.to_user(self.viewport, axis_of(name));
                    *value = AttrValue::number(user * self.factor);
                }
            }
            AttrValue::Transform(_) | AttrValue::Color(_) => {}
        }
    }

    fn scale_attrs(&self, el: &mut Element, names: &[&str]) {
        for attr in &mut el.attributes {
            if names.contains(&attr.name.as_str()) {
                self.scale_value(&attr.name, &mut attr.value);
            }
        }
    }

    fn scale_transform(&self, el: &mut Element, name: &str) {
        if let Some(AttrValue::Transform(t)) = el.attr_mut(name) {
            for op in &mut t.ops {
                op.scale_translation(self.factor);
            }
        }
    }

    fn scale_children(&self, el: &mut Element) {
        for child in el.child_elements_mut() {
            self.scale_element(child);
        }
    }

    fn scale_element(&self, el: &mut Element) {
        match el.kind {
            ElementKind::Svg | ElementKind::Symbol => {
                self.scale_attrs(el, LENGTH_ATTRS);
                self.scale_transform(el, "transform");
                if !el.has_attr("viewBox") {
                    self.scale_children(el);
                }
            }
            ElementKind::LinearGradient | ElementKind::RadialGradient => {
                if self.units.gradient_in_user_space(el) {
                    self.scale_attrs(el, GRADIENT_GEOMETRY);
                    self.scale_transform(el, "gradientTransform");
                }
            }
            ElementKind::Pattern => {
                if is_user_space(el, "patternUnits", false) {
                    self.scale_attrs(el, REGION_ATTRS);
                }
                self.scale_transform(el, "patternTransform");
                if is_user_space(el, "patternContentUnits", true) && !el.has_attr("viewBox") {
                    self.scale_children(el);
                }
            }
            ElementKind::ClipPath => {
                self.scale_transform(el, "transform");
                if is_user_space(el, "clipPathUnits", true) {
                    self.scale_children(el);
                }
            }
            ElementKind::Mask => {
                if is_user_space(el, "maskUnits", false) {
                    self.scale_attrs(el, REGION_ATTRS);
                }
                if is_user_space(el, "maskContentUnits", true) {
                    self.scale_children(el);
                }
            }
            ElementKind::Filter => {
                if is_user_space(el, "filterUnits", false) {
                    self.scale_attrs(el, REGION_ATTRS);
                }
                if is_user_space(el, "primitiveUnits", true) {
                    for prim in el.child_elements_mut() {
                        self.scale_attrs(prim, &["stdDeviation", "dx", "dy"]);
                    }
                }
            }
            ElementKind::Marker => {
                if el.attr_text("markerUnits").as_deref() == Some("userSpaceOnUse") {
                    self.scale_attrs(el, &["markerWidth", "markerHeight"]);
                }
                if !el.has_attr("viewBox") {
                    self.scale_children(el);
                }
            }
            ElementKind::Animate | ElementKind::Set => self.scale_animate(el),
            ElementKind::AnimateTransform => self.scale_animate_transform(el),
            ElementKind::AnimateMotion => {
                self.scale_attrs(el, &["path", "from", "to", "by", "values"]);
                self.scale_children(el);
            }
            ElementKind::Stop => {}
            _ => {
                self.scale_attrs(el, LENGTH_ATTRS);
                if el.kind == ElementKind::Path {
                    self.scale_attrs(el, &["d"]);
                }
                self.scale_transform(el, "transform");
                self.scale_children(el);
            }
        }
    }

    fn scale_animate(&self, el: &mut Element) {
        let Some(target) = el.attr_text("attributeName") else {
            return;
        };
        if target == "d" {
            for name in ["from", "to", "by", "values"] {
                if let Some(AttrValue::Opaque(text)) = el.attr_mut(name) {
                    if let Some(scaled) = self.scale_path_list(text) {
                        *text = scaled;
                    }
                }
            }
        } else if LENGTH_ATTRS.contains(&target.as_str()) {
            for name in ["from", "to", "by", "values"] {
                if let Some(value) = el.attr_mut(name) {
                    match value {
                        AttrValue::Numbers(list) => list.values_mut().for_each(|v| *v *= self.factor),
                        AttrValue::Opaque(text) => {
                            if let Some(scaled) = self.scale_length_list(&target, text) {
                                *value = AttrValue::Numbers(scaled);
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    fn scale_length_list(&self, target: &str, text: &str) -> Option<NumberList> {
        let groups = text
            .split(';')
            .map(|part| {
                let length = Length::parse(part)?;
                Some(vec![length.to_user(self.viewport, axis_of(target)) * self.factor])
            })
            .collect::<Option<Vec<_>>>()?;
        Some(NumberList { groups })
    }

    fn scale_path_list(&self, text: &str) -> Option<String> {
        let parts = text
            .split(';')
            .map(|part| {
                let mut path: PathData = part.parse().ok()?;
                path.scale(self.factor);
                Some(path.to_svg_string(crate::number::DEFAULT_PRECISION))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(parts.join(";"))
    }

    fn scale_animate_transform(&self, el: &mut Element) {
        let kind = el.attr_text("type").unwrap_or_else(|| "translate".into());
        let indices: &[usize] = match kind.as_str() {
            "translate" => &[0, 1],
            "rotate" => &[1, 2],
            _ => &[],
        };
        for name in ["from", "to", "by", "values"] {
            if let Some(AttrValue::Numbers(list)) = el.attr_mut(name) {
                for group in &mut list.groups {
                    for &i in indices {
                        if let Some(v) = group.get_mut(i) {
                            *v *= self.factor;
                        }
                    }
                }
            }
        }
    }
}
