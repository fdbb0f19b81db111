//! Instruction text for edit samples: a seeded pick from a fixed template
//! pool per op kind, followed by the concrete parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::op::{EditKind, EditOp, FlipAxis};
use svgbench_core::number::format_number;

pub const ADD_STROKE_TEMPLATES: [&str; 15] = [
    "Add an outline to this SVG shape.",
    "Apply stroke effects to the SVG graphic.",
    "Add a border to the shape.",
    "Please add an outline stroke to this graphic.",
    "Add border lines to the SVG shape.",
    "Give the graphic a border outline.",
    "Please add stroke to the SVG element.",
    "Add an outer outline to this shape.",
    "Add boundary lines to the graphic.",
    "Please add border effects to the SVG graphic.",
    "Add outline lines to this graphic.",
    "Add stroke outline to the SVG shape.",
    "Please add outer border lines to the graphic.",
    "Add border stroke to this SVG.",
    "Add outline border to the shape.",
];

pub const TRANSLATE_TEMPLATES: [&str; 15] = [
    "Translate this SVG graphic.",
    "Move the SVG graphic to a new position.",
    "Please translate this graphic.",
    "Move the graphic in the specified direction.",
    "Please move the SVG shape.",
    "Adjust the position of the graphic.",
    "Please translate this shape.",
    "Move the position of the SVG element.",
    "Please adjust the graphic's position.",
    "Move the SVG graphic in a certain direction.",
    "Please apply translation transform to the graphic.",
    "Move this SVG shape.",
    "Please translate the graphic to a new position.",
    "Apply position movement to the SVG.",
    "Please translate this SVG element.",
];

pub const SCALE_TEMPLATES: [&str; 15] = [
    "Scale this SVG graphic.",
    "Adjust the size of the SVG graphic.",
    "Please scale this graphic.",
    "Enlarge or shrink the graphic.",
    "Please scale the SVG shape.",
    "Adjust the size of the graphic.",
    "Please scale this shape.",
    "Apply size adjustment to the SVG element.",
    "Please adjust the graphic size.",
    "Scale the SVG graphic proportionally.",
    "Please apply scaling transform to the graphic.",
    "Adjust the size of this SVG shape.",
    "Please scale the graphic proportionally.",
    "Apply size adjustment to the SVG.",
    "Please scale this SVG element.",
];

pub const ROTATE_TEMPLATES: [&str; 15] = [
    "Rotate this SVG graphic.",
    "Rotate the SVG graphic around its center.",
    "Please rotate this graphic.",
    "Rotate the graphic by a specified angle.",
    "Please rotate the SVG shape.",
    "Rotate the graphic around the center point.",
    "Please rotate this shape.",
    "Apply angle adjustment to the SVG element.",
    "Please rotate the graphic.",
    "Rotate the SVG graphic clockwise/counterclockwise.",
    "Please apply rotation transform to the graphic.",
    "Rotate this SVG shape around its center.",
    "Please rotate the graphic by a certain angle.",
    "Apply rotation operation to the SVG.",
    "Please rotate this SVG element.",
];

pub const FLIP_TEMPLATES: [&str; 15] = [
    "Flip this SVG graphic.",
    "Flip the SVG graphic.",
    "Please flip this graphic.",
    "Flip the graphic vertically or horizontally.",
    "Please flip the SVG shape.",
    "Flip the direction of the graphic.",
    "Please flip this shape.",
    "Apply mirror flip to the SVG element.",
    "Please flip the graphic.",
    "Apply mirror processing to the SVG graphic.",
    "Please apply flip transform to the graphic.",
    "Flip this SVG shape.",
    "Please apply mirror flip to the graphic.",
    "Apply flip operation to the SVG.",
    "Please flip this SVG element.",
];

pub const TRANSPARENCY_TEMPLATES: [&str; 15] = [
    "Adjust the opacity of this SVG graphic.",
    "Set the transparency of the SVG graphic.",
    "Please adjust the transparency of the graphic.",
    "Set the graphic to semi-transparent.",
    "Please modify the opacity of the SVG shape.",
    "Adjust the opacity of the graphic.",
    "Please set the transparency of this shape.",
    "Apply opacity adjustment to the SVG element.",
    "Please adjust the graphic's opacity.",
    "Set the SVG graphic to transparent effect.",
    "Please apply opacity transform to the graphic.",
    "Adjust the opacity of this SVG shape.",
    "Please modify the graphic's transparency.",
    "Apply opacity operation to the SVG.",
    "Please adjust the opacity of this SVG element.",
];

pub const CROP_TEMPLATES: [&str; 15] = [
    "Crop this SVG graphic.",
    "Crop the SVG graphic to show part of it.",
    "Please crop this graphic.",
    "Crop the graphic to a specific region.",
    "Please crop the SVG shape.",
    "Crop the graphic to half size.",
    "Please crop this shape.",
    "Apply cropping to the SVG element.",
    "Please crop the graphic.",
    "Crop the SVG graphic to show only part.",
    "Please apply crop transform to the graphic.",
    "Crop this SVG shape.",
    "Please crop the graphic to specified area.",
    "Apply crop operation to the SVG.",
    "Please crop this SVG element.",
];

/// Template pool for `kind`. Color edits use a single fixed format.
pub fn templates(kind: EditKind) -> &'static [&'static str] {
    match kind {
        EditKind::ColorEdit => &["Change color {from} to {to}"],
        EditKind::AddStroke => &ADD_STROKE_TEMPLATES,
        EditKind::Translate => &TRANSLATE_TEMPLATES,
        EditKind::Scale => &SCALE_TEMPLATES,
        EditKind::Rotate => &ROTATE_TEMPLATES,
        EditKind::Flip => &FLIP_TEMPLATES,
        EditKind::Transparency => &TRANSPARENCY_TEMPLATES,
        EditKind::Crop => &CROP_TEMPLATES,
    }
}

fn num(v: f64) -> String {
    format_number(v, 2)
}

fn plural(v: f64) -> &'static str {
    if v == 1.0 {
        ""
    } else {
        "s"
    }
}

fn parameters(op: &EditOp) -> String {
    match op {
        EditOp::ColorEdit { .. } => String::new(),
        EditOp::AddStroke { color, width } => format!("Use stroke color {color} with width {}.", num(*width)),
        EditOp::Translate { dx, dy, .. } => {
            let mut parts = Vec::new();
            if *dx != 0.0 {
                let dir = if *dx > 0.0 { "right" } else { "left" };
                parts.push(format!("{} unit{} {dir}", num(dx.abs()), plural(dx.abs())));
            }
            if *dy != 0.0 {
                let dir = if *dy > 0.0 { "down" } else { "up" };
                parts.push(format!("{} unit{} {dir}", num(dy.abs()), plural(dy.abs())));
            }
            if parts.is_empty() {
                "Keep it in place.".to_string()
            } else {
                format!("Move it {}.", parts.join(" and "))
            }
        }
        EditOp::Scale { factor } => format!("Scale it by a factor of {} about the center.", num(*factor)),
        EditOp::Rotate { degrees } => {
            let dir = if *degrees < 0.0 { "counterclockwise" } else { "clockwise" };
            format!("Rotate it {} degrees {dir} about the center.", num(degrees.abs()))
        }
        EditOp::Flip { axis } => match axis {
            FlipAxis::Horizontal => "Flip it horizontally.".to_string(),
            FlipAxis::Vertical => "Flip it vertically.".to_string(),
        },
        EditOp::Transparency { opacity } => format!("Set its opacity to {}.", num(*opacity)),
        EditOp::Crop { region } => format!("Keep only the {}.", region.label()),
    }
}

/// Seeded instruction for `op`. The same op and seed always give the same
/// text.
pub fn make_instruction(op: &EditOp, seed: u64) -> String {
    if let EditOp::ColorEdit { from_hex, to_hex } = op {
        return format!("Change color {from_hex} to {to_hex}");
    }
    let pool = templates(op.kind());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let template = pool[rng.gen_range(0..pool.len())];
    format!("{template} {}", parameters(op))
}
