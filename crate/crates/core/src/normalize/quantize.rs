use crate::element::{Document, Element};
use crate::number::round_decimal;

/// Rounds every typed numeric literal (numbers, path arguments, transform
/// parameters) to `precision` decimals, half away from zero.
pub fn quantize_numbers(doc: &Document, precision: u32) -> Document {
    let mut out = doc.clone();
    out.root.visit_mut(&mut |el: &mut Element| {
        for attr in &mut el.attributes {
            for v in attr.value.numbers_mut() {
                *v = round_decimal(*v, precision);
            }
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_svg;

    fn first_attr(doc: &Document, name: &str) -> String {
        doc.root.child_elements().next().unwrap().attr_text(name).unwrap()
    }

    #[test]
    fn rounds_half_away_from_zero() {
        let doc = parse_svg(r#"<svg><circle cx="63.996" cy="-0.005" r="12"/></svg>"#).unwrap();
        let q = quantize_numbers(&doc, 2);
        let c = q.root.child_elements().next().unwrap();
        assert_eq!(c.attr("cx").unwrap().as_number(), Some(64.0));
        assert_eq!(c.attr("cy").unwrap().as_number(), Some(-0.01));
        assert_eq!(c.attr("r").unwrap().as_number(), Some(12.0));
        assert_eq!(first_attr(&q, "cx"), "64");
    }

    #[test]
    fn path_and_transform_arguments_are_rounded() {
        let doc = parse_svg(r#"<svg><path d="M0.004 1.2345L3 4" transform="rotate(33.333 1.005 2)"/></svg>"#).unwrap();
        let q = quantize_numbers(&doc, 1);
        assert_eq!(first_attr(&q, "d"), "M0 1.2L3 4");
        assert_eq!(first_attr(&q, "transform"), "rotate(33.3 1 2)");
    }
}
