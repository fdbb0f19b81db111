//! Typed attribute values.

use std::fmt;

use crate::color::Color;
use crate::element::ElementKind;
use crate::number::{format_number, parse_number_list, DEFAULT_PRECISION};
use crate::path::PathData;
use crate::transform::TransformList;

/// Numbers of a numeric attribute. Animation value lists (`values`,
/// `keyTimes`) have several `;`-separated groups; everything else has one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NumberList {
    pub groups: Vec<Vec<f64>>,
}

impl NumberList {
    pub fn single(values: Vec<f64>) -> Self {
        NumberList { groups: vec![values] }
    }

    pub fn number(value: f64) -> Self {
        Self::single(vec![value])
    }

    pub fn is_grouped(&self) -> bool {
        self.groups.len() != 1
    }

    /// The only value, when there is exactly one.
    pub fn as_number(&self) -> Option<f64> {
        match self.groups.as_slice() {
            [g] if g.len() == 1 => Some(g[0]),
            _ => None,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = &f64> {
        self.groups.iter().flatten()
    }

    pub fn values_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.groups.iter_mut().flatten()
    }

    pub fn to_svg_string(&self, precision: u32) -> String {
        self.groups
            .iter()
            .map(|g| g.iter().map(|v| format_number(*v, precision)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn parse(raw: &str, grouped: bool) -> Option<NumberList> {
        if grouped {
            let groups = raw
                .split(';')
                .map(|part| {
                    let nums = parse_number_list(part)?;
                    (!nums.is_empty()).then_some(nums)
                })
                .collect::<Option<Vec<_>>>()?;
            return Some(NumberList { groups });
        }
        let trimmed = raw.trim();
        // a single length written with an explicit px unit
        if let Some(num) = trimmed.strip_suffix("px") {
            let nums = parse_number_list(num)?;
            return (nums.len() == 1).then(|| NumberList::single(nums));
        }
        let nums = parse_number_list(trimmed)?;
        (!nums.is_empty()).then(|| NumberList::single(nums))
    }
}

/// An attribute value in parsed form. Values that fail their typed grammar
/// are kept verbatim as [`AttrValue::Opaque`]; validation of those is left to
/// consumers (the renderer rejects malformed geometry).
#[derive(Debug, Clone, PartialEq)]
pub enum AttrValue {
    Numbers(NumberList),
    Path(PathData),
    Transform(TransformList),
    Color(Color),
    Opaque(String),
}

const NUMERIC_ATTRS: &[&str] = &[
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
    "fx",
    "fy",
    "fr",
    "dx",
    "dy",
    "points",
    "viewBox",
    "stroke-width",
    "stroke-miterlimit",
    "stroke-dashoffset",
    "stroke-dasharray",
    "opacity",
    "fill-opacity",
    "stroke-opacity",
    "stop-opacity",
    "flood-opacity",
    "offset",
    "font-size",
    "stdDeviation",
    "pathLength",
    "refX",
    "refY",
    "markerWidth",
    "markerHeight",
    "from",
    "to",
    "by",
];

const GROUPED_ATTRS: &[&str] = &["values", "keyTimes", "keySplines", "keyPoints"];

const TRANSFORM_ATTRS: &[&str] = &["transform", "gradientTransform", "patternTransform"];

const COLOR_ATTRS: &[&str] = &["fill", "stroke", "stop-color", "flood-color", "lighting-color", "color"];

/// Properties lifted out of `style="..."` into presentation attributes.
pub const PRESENTATION_PROPERTIES: &[&str] = &[
    "fill",
    "fill-opacity",
    "fill-rule",
    "stroke",
    "stroke-width",
    "stroke-opacity",
    "stroke-linecap",
    "stroke-linejoin",
    "stroke-miterlimit",
    "stroke-dasharray",
    "stroke-dashoffset",
    "opacity",
    "stop-color",
    "stop-opacity",
    "clip-rule",
    "display",
    "visibility",
    "font-size",
    "font-family",
    "text-anchor",
    "color",
];

impl AttrValue {
    /// Parses `raw` according to the grammar of attribute `name` on an
    /// element of `kind`.
    pub fn parse(kind: ElementKind, name: &str, raw: &str) -> AttrValue {
        let opaque = || AttrValue::Opaque(raw.to_string());
        let is_path_attr = (name == "d" && kind == ElementKind::Path) || (name == "path" && kind == ElementKind::AnimateMotion);
        if is_path_attr {
            return match raw.parse::<PathData>() {
                Ok(p) => AttrValue::Path(p),
                Err(_) => opaque(),
            };
        }
        if TRANSFORM_ATTRS.contains(&name) {
            return match raw.parse::<TransformList>() {
                Ok(t) if !t.ops.is_empty() => AttrValue::Transform(t),
                _ => opaque(),
            };
        }
        if COLOR_ATTRS.contains(&name) && !kind.is_animation() {
            return match raw.parse::<Color>() {
                Ok(c) => AttrValue::Color(c),
                Err(_) => opaque(),
            };
        }
        if GROUPED_ATTRS.contains(&name) && kind.is_animation() {
            return NumberList::parse(raw, true).map(AttrValue::Numbers).unwrap_or_else(opaque);
        }
        if NUMERIC_ATTRS.contains(&name) {
            return NumberList::parse(raw, false).map(AttrValue::Numbers).unwrap_or_else(opaque);
        }
        opaque()
    }

    pub fn number(value: f64) -> AttrValue {
        AttrValue::Numbers(NumberList::number(value))
    }

    pub fn numbers(values: Vec<f64>) -> AttrValue {
        AttrValue::Numbers(NumberList::single(values))
    }

    pub fn opaque(text: impl Into<String>) -> AttrValue {
        AttrValue::Opaque(text.into())
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            AttrValue::Numbers(n) => n.as_number(),
            _ => None,
        }
    }

    pub fn as_numbers(&self) -> Option<&NumberList> {
        match self {
            AttrValue::Numbers(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_path(&self) -> Option<&PathData> {
        match self {
            AttrValue::Path(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_transform(&self) -> Option<&TransformList> {
        match self {
            AttrValue::Transform(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_color(&self) -> Option<&Color> {
        match self {
            AttrValue::Color(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_opaque(&self) -> Option<&str> {
        match self {
            AttrValue::Opaque(s) => Some(s),
            _ => None,
        }
    }

    /// Every numeric literal held in typed form.
    pub fn numbers_mut(&mut self) -> Vec<&mut f64> {
        match self {
            AttrValue::Numbers(n) => n.values_mut().collect(),
            AttrValue::Path(p) => p.numbers_mut().collect(),
            AttrValue::Transform(t) => t.ops.iter_mut().flat_map(|op| op.numbers_mut()).collect(),
            AttrValue::Color(_) | AttrValue::Opaque(_) => Vec::new(),
        }
    }

    pub fn to_svg_string(&self, precision: u32) -> String {
        match self {
            AttrValue::Numbers(n) => n.to_svg_string(precision),
            AttrValue::Path(p) => p.to_svg_string(precision),
            AttrValue::Transform(t) => t.to_svg_string(precision),
            AttrValue::Color(c) => c.to_string(),
            AttrValue::Opaque(s) => s.clone(),
        }
    }
}

impl fmt::Display for AttrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_svg_string(DEFAULT_PRECISION))
    }
}

/// Splits a CSS declaration block into `(property, value)` pairs.
pub fn parse_style(style: &str) -> Vec<(String, String)> {
    style
        .split(';')
        .filter_map(|decl| {
            let (prop, value) = decl.split_once(':')?;
            let prop = prop.trim();
            let value = value.trim();
            let value = value.strip_suffix("!important").map(str::trim_end).unwrap_or(value);
            (!prop.is_empty() && !value.is_empty()).then(|| (prop.to_string(), value.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typed_parsing_by_name() {
        let k = ElementKind::Circle;
        assert_eq!(AttrValue::parse(k, "cx", "4"), AttrValue::number(4.0));
        assert_eq!(AttrValue::parse(k, "cx", "4px"), AttrValue::number(4.0));
        assert_eq!(AttrValue::parse(k, "cx", "50%"), AttrValue::opaque("50%"));
        assert!(matches!(AttrValue::parse(k, "fill", "#fff"), AttrValue::Color(_)));
        assert_eq!(AttrValue::parse(k, "fill", "none"), AttrValue::opaque("none"));
        assert!(matches!(AttrValue::parse(k, "transform", "scale(2)"), AttrValue::Transform(_)));
        assert_eq!(AttrValue::parse(k, "id", "c1"), AttrValue::opaque("c1"));
        assert!(matches!(AttrValue::parse(ElementKind::Path, "d", "M0 0L1 1"), AttrValue::Path(_)));
        assert_eq!(AttrValue::parse(ElementKind::Path, "d", "M0 0L"), AttrValue::opaque("M0 0L"));
    }

    #[test]
    fn animation_value_lists_are_grouped() {
        let v = AttrValue::parse(ElementKind::Animate, "values", "0;64; 128");
        assert_eq!(v.to_string(), "0;64;128");
        let v = AttrValue::parse(ElementKind::AnimateTransform, "values", "0 64 64;360 64 64");
        assert_eq!(v.as_numbers().unwrap().groups.len(), 2);
        let v = AttrValue::parse(ElementKind::Animate, "values", "red;blue");
        assert_eq!(v, AttrValue::opaque("red;blue"));
        let v = AttrValue::parse(ElementKind::Animate, "to", "red");
        assert_eq!(v, AttrValue::opaque("red"));
    }

    #[test]
    fn style_declarations() {
        assert_eq!(
            parse_style("fill: red; stroke:#000 !important;;bogus"),
            vec![("fill".to_string(), "red".to_string()), ("stroke".to_string(), "#000".to_string())]
        );
    }
}
