use proptest::prelude::*;
use svgbench_core::{parse_svg, Document};
use svgbench_edit::{apply_edit, EditOp, FlipAxis};
use svgbench_render::{render, RasterImage};

const SIZE: u32 = 512;
const PX_PER_UNIT: f64 = SIZE as f64 / 128.0;
const MIN_EXACT: f64 = 0.995;
const MAX_DIFF: u8 = 1;

const PALETTE: [&str; 6] = ["#e53935", "#1e88e5", "#43a047", "#fdd835", "#8e24aa", "#212121"];

#[derive(Debug, Clone)]
enum Shape {
    Rect { x: i32, y: i32, w: i32, h: i32 },
    Circle { cx: i32, cy: i32, r: i32 },
    Tri([(i32, i32); 3]),
}

#[derive(Debug, Clone)]
struct Item {
    shape: Shape,
    fill: usize,
    stroke: Option<(usize, u8)>,
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        (8..80i32, 8..80i32, 4..40i32, 4..40i32).prop_map(|(x, y, w, h)| Shape::Rect { x, y, w, h }),
        (24..104i32, 24..104i32, 3..20i32).prop_map(|(cx, cy, r)| Shape::Circle { cx, cy, r }),
        prop::array::uniform3((10..118i32, 10..118i32)).prop_map(Shape::Tri),
    ]
}

fn item() -> impl Strategy<Value = Item> {
    (shape(), 0..PALETTE.len(), prop::option::of((0..PALETTE.len(), 1..4u8))).prop_map(|(shape, fill, stroke)| Item { shape, fill, stroke })
}

fn icon_text(items: &[Item]) -> String {
    let mut s = String::from(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 128 128">"#);
    for it in items {
        let paint = match it.stroke {
            Some((c, w)) => format!(r#" fill="{}" stroke="{}" stroke-width="{w}""#, PALETTE[it.fill], PALETTE[c]),
            None => format!(r#" fill="{}""#, PALETTE[it.fill]),
        };
        match &it.shape {
            Shape::Rect { x, y, w, h } => s += &format!(r#"<rect x="{x}" y="{y}" width="{w}" height="{h}"{paint}/>"#),
            Shape::Circle { cx, cy, r } => s += &format!(r#"<circle cx="{cx}" cy="{cy}" r="{r}"{paint}/>"#),
            Shape::Tri(p) => s += &format!(r#"<path d="M{} {}L{} {}L{} {}Z"{paint}/>"#, p[0].0, p[0].1, p[1].0, p[1].1, p[2].0, p[2].1),
        }
    }
    s + "</svg>"
}

fn icon(items: &[Item]) -> Document {
    parse_svg(&icon_text(items)).unwrap()
}

/// Fraction of exactly equal channels and the largest channel difference.
fn compare(a: &RasterImage, b: &RasterImage) -> (f64, u8) {
    assert_eq!((a.width, a.height), (b.width, b.height));
    let mut exact = 0usize;
    let mut max = 0u8;
    for (x, y) in a.data.chunks(3).zip(b.data.chunks(3)) {
        let d = x.iter().zip(y).map(|(p, q)| p.abs_diff(*q)).max().unwrap();
        exact += (d == 0) as usize;
        max = max.max(d);
    }
    (exact as f64 / (a.width * a.height) as f64, max)
}

fn assert_oracle(doc: &Document, op: &EditOp, oracle: impl Fn(&RasterImage) -> RasterImage) -> Result<(), TestCaseError> {
    let before = render(doc, SIZE).unwrap();
    let after = render(&apply_edit(doc, op).unwrap(), SIZE).unwrap();
    let (exact, max) = compare(&after, &oracle(&before));
    prop_assert!(exact >= MIN_EXACT && max <= MAX_DIFF, "{op:?}: exact {exact}, max diff {max}");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_matches_pixel_shift(items in prop::collection::vec(item(), 1..6), dx in -16..16i32, dy in -16..16i32) {
        let doc = icon(&items);
        let op = EditOp::Translate { dx: dx as f64, dy: dy as f64, bounded: false };
        let (px, py) = ((dx as f64 * PX_PER_UNIT) as i64, (dy as f64 * PX_PER_UNIT) as i64);
        assert_oracle(&doc, &op, |img| img.translate(px, py))?;
    }

    #[test]
    fn flips_match_pixel_mirrors(items in prop::collection::vec(item(), 1..6)) {
        let doc = icon(&items);
        assert_oracle(&doc, &EditOp::Flip { axis: FlipAxis::Horizontal }, RasterImage::flip_horizontal)?;
        assert_oracle(&doc, &EditOp::Flip { axis: FlipAxis::Vertical }, RasterImage::flip_vertical)?;
    }

    #[test]
    fn quarter_turns_match_pixel_rotation(items in prop::collection::vec(item(), 1..6), quarters in 1..4u32) {
        let doc = icon(&items);
        let op = EditOp::Rotate { degrees: 90.0 * quarters as f64 };
        assert_oracle(&doc, &op, |img| (0..quarters).fold(img.clone(), |acc, _| acc.rotate90_cw()))?;
    }

    #[test]
    fn identity_ops_keep_the_raster(items in prop::collection::vec(item(), 1..6)) {
        let doc = icon(&items);
        let ops = [
            EditOp::Translate { dx: 0.0, dy: 0.0, bounded: false },
            EditOp::Scale { factor: 1.0 },
            EditOp::Rotate { degrees: 0.0 },
            EditOp::Transparency { opacity: 1.0 },
        ];
        for op in ops {
            prop_assert!(op.is_identity());
            assert_oracle(&doc, &op, RasterImage::clone)?;
        }
    }

    #[test]
    fn transparency_blends_with_white(items in prop::collection::vec(item(), 1..6), pct in 0..=100u32) {
        let doc = icon(&items);
        let alpha = pct as f64 / 100.0;
        let before = render(&doc, SIZE).unwrap();
        let after = render(&apply_edit(&doc, &EditOp::Transparency { opacity: alpha }).unwrap(), SIZE).unwrap();
        for (o, e) in before.data.iter().zip(&after.data) {
            let expect = alpha * *o as f64 + (1.0 - alpha) * 255.0;
            prop_assert!((*e as f64 - expect).abs() <= 1.0, "{e} vs {expect}");
        }
    }

    #[test]
    fn color_edit_is_local(items in prop::collection::vec(item(), 1..6), pick in 0..6usize) {
        let doc = icon(&items);
        let from = PALETTE[items[pick % items.len()].fill];
        let recolored = |to: &str| {
            let op = EditOp::ColorEdit { from_hex: from.into(), to_hex: to.into() };
            render(&apply_edit(&doc, &op).unwrap(), SIZE).unwrap()
        };
        // pixels untouched by `from` paint look the same whatever it becomes
        let (black, white) = (recolored("#000000"), recolored("#ffffff"));
        let before = render(&doc, SIZE).unwrap();
        let after = recolored("#d8bfd8");
        for i in (0..before.data.len()).step_by(3) {
            if black.data[i..i + 3] == white.data[i..i + 3] {
                for c in 0..3 {
                    prop_assert!(before.data[i + c].abs_diff(after.data[i + c]) <= MAX_DIFF);
                }
            }
        }
    }
}

#[test]
fn scale_about_center_keeps_the_center() {
    let doc = parse_svg(r##"<svg viewBox="0 0 128 128"><rect x="48" y="48" width="32" height="32" fill="#1e88e5"/></svg>"##).unwrap();
    let img = render(&apply_edit(&doc, &EditOp::Scale { factor: 1.5 }).unwrap(), SIZE).unwrap();
    // 32 units at 1.5x is 48 units, centered: 40..88 units, 160..352 px
    assert_eq!(img.pixel(256, 256), [0x1e, 0x88, 0xe5]);
    assert_eq!(img.pixel(161, 161), [0x1e, 0x88, 0xe5]);
    assert_eq!(img.pixel(158, 256), [255, 255, 255]);
    assert_eq!(img.pixel(353, 256), [255, 255, 255]);
}

#[test]
fn crop_shows_only_the_half() {
    let doc = parse_svg(r##"<svg viewBox="0 0 128 128"><rect x="0" y="0" width="64" height="128" fill="#e53935"/><rect x="64" y="0" width="64" height="128" fill="#1e88e5"/></svg>"##).unwrap();
    let img = render(&apply_edit(&doc, &EditOp::Crop { region: svgbench_edit::CropRegion::LeftHalf }).unwrap(), SIZE).unwrap();
    // the 64x128 window is letterboxed into the middle half of the canvas
    assert_eq!(img.pixel(256, 256), [0xe5, 0x39, 0x35]);
    assert_eq!(img.pixel(140, 10), [0xe5, 0x39, 0x35]);
    assert_eq!(img.pixel(60, 256), [255, 255, 255]);
    assert_eq!(img.pixel(450, 256), [255, 255, 255]);
}
