use proptest::prelude::*;
use svgbench_core::parse_svg;
use svgbench_render::{rasterize, rasterize_animation, rasterize_text, RasterImage, RenderOutcome};

fn circle_doc(cx: f64, cy: f64, r: f64) -> String {
    format!(r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 128 128"><circle cx="{cx}" cy="{cy}" r="{r}" fill="#204080"/></svg>"##)
}

#[test]
fn broken_documents_are_penalized_identically() {
    for src in ["<svg><path d=\"M 0 0 L\"/></svg>", "<svg", "<html/>"] {
        let a = rasterize_text(src, 32);
        let b = rasterize_text(src, 32);
        assert!(a.is_penalized(), "{src}");
        assert_eq!(a, b);
        assert_eq!(a.image(), &RasterImage::black(32, 32));
    }
}

#[test]
fn full_black_rect_is_not_a_penalty() {
    let out = rasterize_text(r#"<svg viewBox="0 0 128 128"><rect width="128" height="128"/></svg>"#, 32);
    assert!(matches!(out, RenderOutcome::Ok(_)));
    assert_eq!(out.image(), &RasterImage::black(32, 32));
}

#[test]
fn static_document_frames_are_constant() {
    let doc = parse_svg(&circle_doc(40.0, 50.0, 20.0)).unwrap();
    let frames = rasterize_animation(&doc, 64, 8, None);
    assert_eq!(frames.len(), 8);
    assert!(frames.iter().all(|f| f == &frames[0]));
}

#[test]
fn unrenderable_animation_is_all_black() {
    let doc = parse_svg(r#"<svg><circle r="-3"><animate attributeName="cx" from="0" to="9" dur="1s"/></circle></svg>"#).unwrap();
    let frames = rasterize_animation(&doc, 32, 8, None);
    assert_eq!(frames.len(), 8);
    assert!(frames.iter().all(|f| f.is_penalized()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Shifting geometry by a whole number of pixels shifts the raster.
    #[test]
    fn integer_translation_shifts_pixels(cx in 30.0f64..90.0, cy in 30.0f64..90.0, r in 3.0f64..20.0, dx in -8i64..8, dy in -8i64..8) {
        let a = rasterize(&parse_svg(&circle_doc(cx, cy, r)).unwrap(), 128).into_image();
        let b = rasterize(&parse_svg(&circle_doc(cx + dx as f64, cy + dy as f64, r)).unwrap(), 128).into_image();
        prop_assert_eq!(a.translate(dx, dy), b);
    }

    #[test]
    fn horizontal_mirror_is_exact(x in 0.0f64..100.0, y in 0.0f64..100.0, w in 1.0f64..28.0, h in 1.0f64..28.0) {
        let rect = |x: f64| format!(r#"<svg viewBox="0 0 128 128"><rect x="{x}" y="{y}" width="{w}" height="{h}" fill="red" stroke="blue" stroke-width="3"/></svg>"#);
        let a = rasterize_text(&rect(x), 128).into_image();
        let b = rasterize_text(&rect(128.0 - x - w), 128).into_image();
        prop_assert_eq!(a.flip_horizontal(), b);
    }
}
