//! Structural application of edit ops to canonical documents.

use svgbench_core::{AttrValue, Document, Element, ElementKind, Node, TransformList, TransformOp};
use svgbench_render::{render, root_viewbox};

use crate::op::{hex_color, CropRegion, EditOp, FlipAxis};
use crate::Error;

const PAINT_ATTRS: &[&str] = &["fill", "stroke", "stop-color"];

/// Raster size used to measure content for bounded translation.
const BOUNDS_RASTER: u32 = 256;

pub fn apply_edit(doc: &Document, op: &EditOp) -> Result<Document, Error> {
    op.validate()?;
    let canvas = root_viewbox(&doc.root)?;
    let (cx, cy) = (canvas[0] + canvas[2] / 2.0, canvas[1] + canvas[3] / 2.0);
    let mut out = doc.clone();
    match op {
        EditOp::ColorEdit { from_hex, to_hex } => {
            let replaced = recolor(&mut out.root, from_hex, to_hex)?;
            if replaced == 0 {
                return Err(Error::ColorNotFound(from_hex.clone()));
            }
        }
        EditOp::AddStroke { color, width } => {
            let stroke = hex_color(color)?;
            let mut touched = 0;
            add_stroke(&mut out.root, false, false, &stroke, *width, &mut touched);
            if touched == 0 {
                return Err(Error::NoShapes);
            }
        }
        EditOp::Translate { .. } => {
            let EditOp::Translate { dx, dy, .. } = clamp_translation(doc, op)? else { unreachable!() };
            wrap(&mut out.root, transform_attr(vec![TransformOp::Translate(dx, Some(dy))]));
        }
        EditOp::Scale { factor } => wrap(
            &mut out.root,
            transform_attr(vec![
                TransformOp::Translate(cx, Some(cy)),
                TransformOp::Scale(*factor, None),
                TransformOp::Translate(-cx, Some(-cy)),
            ]),
        ),
        EditOp::Rotate { degrees } => wrap(&mut out.root, transform_attr(vec![TransformOp::Rotate(*degrees, Some((cx, cy)))])),
        EditOp::Flip { axis } => {
            let ops = match axis {
                FlipAxis::Horizontal => vec![TransformOp::Translate(2.0 * cx, Some(0.0)), TransformOp::Scale(-1.0, Some(1.0))],
                FlipAxis::Vertical => vec![TransformOp::Translate(0.0, Some(2.0 * cy)), TransformOp::Scale(1.0, Some(-1.0))],
            };
            wrap(&mut out.root, transform_attr(ops));
        }
        EditOp::Transparency { opacity } => wrap(&mut out.root, ("opacity", AttrValue::number(*opacity))),
        EditOp::Crop { region } => {
            let [x, y, w, h] = canvas;
            let window = match region {
                CropRegion::LeftHalf => [x, y, w / 2.0, h],
                CropRegion::RightHalf => [x + w / 2.0, y, w / 2.0, h],
                CropRegion::TopHalf => [x, y, w, h / 2.0],
                CropRegion::BottomHalf => [x, y + h / 2.0, w, h / 2.0],
            };
            out.root.set_attr("viewBox", AttrValue::numbers(window.to_vec()));
        }
    }
    Ok(out)
}

/// For a bounded translation, clamps the offset so that content stays on
/// the canvas. On an axis where content already overflows the canvas the
/// offset becomes zero, since any shift would reveal or hide clipped
/// content. Unbounded ops and other kinds are returned unchanged.
pub fn clamp_translation(doc: &Document, op: &EditOp) -> Result<EditOp, Error> {
    let EditOp::Translate { dx, dy, bounded: true } = *op else {
        return Ok(op.clone());
    };
    let Some(bbox) = content_box(doc)? else {
        return Ok(op.clone());
    };
    let canvas = root_viewbox(&doc.root)?;
    let clamp = |d: f64, lo: f64, hi: f64, start: f64, len: f64| {
        if lo < start || hi > start + len {
            0.0
        } else {
            d.clamp(start - lo, start + len - hi)
        }
    };
    Ok(EditOp::Translate {
        dx: clamp(dx, bbox[0], bbox[2], canvas[0], canvas[2]),
        dy: clamp(dy, bbox[1], bbox[3], canvas[1], canvas[3]),
        bounded: true,
    })
}

/// User-space box `[x0, y0, x1, y1]` of drawn content, or `None` for a
/// blank document. Content is measured through a window twice the canvas
/// size, so parts clipped by the canvas edge are included.
pub fn content_box(doc: &Document) -> Result<Option<[f64; 4]>, Error> {
    let [vx, vy, vw, vh] = root_viewbox(&doc.root)?;
    let window = [vx - vw / 2.0, vy - vh / 2.0, 2.0 * vw, 2.0 * vh];
    let mut wide = doc.clone();
    wide.root.set_attr("viewBox", AttrValue::numbers(window.to_vec()));
    let img = render(&wide, BOUNDS_RASTER)?;
    let (mut x0, mut y0, mut x1, mut y1) = (u32::MAX, u32::MAX, 0, 0);
    for y in 0..img.height {
        for x in 0..img.width {
            if img.pixel(x, y) != [255, 255, 255] {
                x0 = x0.min(x);
                y0 = y0.min(y);
                x1 = x1.max(x + 1);
                y1 = y1.max(y + 1);
            }
        }
    }
    if x0 == u32::MAX {
        return Ok(None);
    }
    let [wx, wy, ww, wh] = window;
    let k = (ww / img.width as f64).max(wh / img.height as f64);
    let (ox, oy) = (wx - (img.width as f64 * k - ww) / 2.0, wy - (img.height as f64 * k - wh) / 2.0);
    Ok(Some([ox + x0 as f64 * k, oy + y0 as f64 * k, ox + x1 as f64 * k, oy + y1 as f64 * k]))
}

fn transform_attr(ops: Vec<TransformOp>) -> (&'static str, AttrValue) {
    ("transform", AttrValue::Transform(TransformList::new(ops)))
}

fn stays_outside(e: &Element) -> bool {
    matches!(
        e.kind,
        ElementKind::Defs | ElementKind::Style | ElementKind::Script | ElementKind::Title | ElementKind::Desc | ElementKind::Metadata
    ) || e.kind.is_animation()
        || e.is_foreign()
}

/// Moves the drawable root children into a new `<g>` carrying `attr`.
fn wrap(root: &mut Element, (name, value): (&str, AttrValue)) {
    let mut group = Element::new(ElementKind::G);
    group.set_attr(name, value);
    let mut kept = Vec::with_capacity(root.children.len());
    let mut group_at = None;
    for node in root.children.drain(..) {
        match node {
            Node::Element(e) if !stays_outside(&e) => {
                group_at.get_or_insert(kept.len());
                group.push_child(e);
            }
            other => kept.push(other),
        }
    }
    if let Some(at) = group_at {
        kept.insert(at, Node::Element(group));
    }
    root.children = kept;
}

fn recolor(root: &mut Element, from_hex: &str, to_hex: &str) -> Result<usize, Error> {
    let from = hex_color(from_hex)?;
    let to = hex_color(to_hex)?;
    let mut count = 0;
    root.visit_mut(&mut |el| {
        for attr in el.attributes.iter_mut() {
            if !PAINT_ATTRS.contains(&attr.name.as_str()) {
                continue;
            }
            if let AttrValue::Color(c) = &attr.value {
                if c.same_color(&from) {
                    attr.value = AttrValue::Color(to.clone());
                    count += 1;
                }
            }
        }
    });
    Ok(count)
}

fn has_stroke(el: &Element, inherited: bool) -> bool {
    match el.attr_text("stroke") {
        Some(s) => s.trim() != "none",
        None => inherited,
    }
}

fn add_stroke(el: &mut Element, inherited: bool, hidden: bool, color: &svgbench_core::Color, width: f64, touched: &mut usize) {
    let stroked = has_stroke(el, inherited);
    for child in el.child_elements_mut() {
        let child_hidden = hidden || child.kind.is_never_rendered_container();
        if child.kind.is_shape() && !child_hidden && !has_stroke(child, stroked) {
            child.set_attr("stroke", AttrValue::Color(color.clone()));
            child.set_attr("stroke-width", AttrValue::number(width));
            *touched += 1;
        }
        add_stroke(child, stroked, child_hidden, color, width, touched);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use svgbench_core::{parse_svg, serialize_svg};

    const ICON: &str = r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 128 128"><defs><linearGradient id="g"><stop offset="0" stop-color="#00ABFF"/></linearGradient></defs><rect x="8" y="8" width="40" height="40" fill="#00abff"/><circle cx="90" cy="90" r="20" fill="#123456" stroke="#000"/></svg>"##;

    #[test]
    fn color_edit_touches_only_matches() {
        let doc = parse_svg(ICON).unwrap();
        let op = EditOp::ColorEdit { from_hex: "#00abff".into(), to_hex: "#D8BFD8".into() };
        let out = serialize_svg(&apply_edit(&doc, &op).unwrap());
        assert_eq!(out, ICON.replace("#00ABFF", "#D8BFD8").replace("#00abff", "#D8BFD8"));
        let missing = EditOp::ColorEdit { from_hex: "#ffffff".into(), to_hex: "#000000".into() };
        assert!(matches!(apply_edit(&doc, &missing), Err(Error::ColorNotFound(_))));
    }

    #[test]
    fn add_stroke_skips_stroked_and_hidden() {
        let doc = parse_svg(ICON).unwrap();
        let out = apply_edit(&doc, &EditOp::AddStroke { color: "#ff0000".into(), width: 2.0 }).unwrap();
        let s = serialize_svg(&out);
        assert!(s.contains(r##"<rect x="8" y="8" width="40" height="40" fill="#00abff" stroke="#ff0000" stroke-width="2"/>"##));
        assert!(s.contains(r##"stroke="#000""##));
        let empty = parse_svg(r#"<svg viewBox="0 0 128 128"><defs><rect width="4" height="4"/></defs></svg>"#).unwrap();
        assert!(matches!(apply_edit(&empty, &EditOp::AddStroke { color: "#000".into(), width: 1.0 }), Err(Error::NoShapes)));
    }

    #[test]
    fn inherited_stroke_counts() {
        let doc = parse_svg(r##"<svg viewBox="0 0 128 128"><g stroke="#000"><rect width="4" height="4"/></g></svg>"##).unwrap();
        assert!(matches!(apply_edit(&doc, &EditOp::AddStroke { color: "#f00".into(), width: 1.0 }), Err(Error::NoShapes)));
    }

    #[test]
    fn geometric_ops_wrap_drawables() {
        let doc = parse_svg(ICON).unwrap();
        let s = serialize_svg(&apply_edit(&doc, &EditOp::Rotate { degrees: 90.0 }).unwrap());
        assert!(s.contains(r#"</defs><g transform="rotate(90 64 64)"><rect"#), "{s}");
        let s = serialize_svg(&apply_edit(&doc, &EditOp::Flip { axis: FlipAxis::Horizontal }).unwrap());
        assert!(s.contains(r#"<g transform="translate(128 0) scale(-1 1)">"#), "{s}");
        let s = serialize_svg(&apply_edit(&doc, &EditOp::Scale { factor: 0.5 }).unwrap());
        assert!(s.contains(r#"<g transform="translate(64 64) scale(0.5) translate(-64 -64)">"#), "{s}");
        let s = serialize_svg(&apply_edit(&doc, &EditOp::Transparency { opacity: 0.4 }).unwrap());
        assert!(s.contains(r#"<g opacity="0.4"><rect"#), "{s}");
    }

    #[test]
    fn crop_sets_window() {
        let doc = parse_svg(ICON).unwrap();
        let s = serialize_svg(&apply_edit(&doc, &EditOp::Crop { region: CropRegion::BottomHalf }).unwrap());
        assert!(s.contains(r#"viewBox="0 64 128 64""#), "{s}");
    }

    #[test]
    fn bounded_translation_clamps() {
        let doc = parse_svg(ICON).unwrap();
        let op = clamp_translation(&doc, &EditOp::Translate { dx: 100.0, dy: -100.0, bounded: true }).unwrap();
        // content spans x 8..111 and y 8..111 (the stroke adds half a unit)
        let EditOp::Translate { dx, dy, .. } = op else { panic!() };
        assert!(dx > 0.0 && dx <= 17.0, "{dx}");
        assert!((-8.0..0.0).contains(&dy), "{dy}");
        let spill = parse_svg(r##"<svg viewBox="0 0 128 128"><rect x="-10" y="20" width="40" height="40"/></svg>"##).unwrap();
        let op = clamp_translation(&spill, &EditOp::Translate { dx: 5.0, dy: 30.0, bounded: true }).unwrap();
        assert_eq!(op, EditOp::Translate { dx: 0.0, dy: 30.0, bounded: true });
        let free = EditOp::Translate { dx: 100.0, dy: 0.0, bounded: false };
        assert_eq!(clamp_translation(&doc, &free).unwrap(), free);
    }
}
