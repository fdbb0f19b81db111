//! [`Document`] to XML text.

use crate::element::{Document, Element, Node};
use crate::number::DEFAULT_PRECISION;

/// Serializes with numbers printed to two decimals.
pub fn serialize_svg(doc: &Document) -> String {
    serialize_svg_with_precision(doc, DEFAULT_PRECISION)
}

pub fn serialize_svg_with_precision(doc: &Document, precision: u32) -> String {
    let mut out = String::with_capacity(doc.source_bytes_len.max(256));
    for node in &doc.prolog {
        write_node(&mut out, node, precision);
    }
    write_element(&mut out, &doc.root, precision);
    for node in &doc.epilog {
        write_node(&mut out, node, precision);
    }
    out
}

pub fn serialize_element(element: &Element, precision: u32) -> String {
    let mut out = String::new();
    write_element(&mut out, element, precision);
    out
}

fn write_node(out: &mut String, node: &Node, precision: u32) {
    match node {
        Node::Element(e) => write_element(out, e, precision),
        Node::Text(t) => escape_text(out, t),
        Node::CData(t) => {
            out.push_str("<![CDATA[");
            out.push_str(t);
            out.push_str("]]>");
        }
        Node::Comment(t) => {
            out.push_str("<!--");
            out.push_str(t);
            out.push_str("-->");
        }
        Node::ProcessingInstruction(t) | Node::Declaration(t) => {
            out.push_str("<?");
            out.push_str(t);
            out.push_str("?>");
        }
        Node::Doctype(t) => {
            out.push_str("<!DOCTYPE ");
            out.push_str(t.trim_start());
            out.push('>');
        }
    }
}

fn write_element(out: &mut String, element: &Element, precision: u32) {
    out.push('<');
    out.push_str(&element.name);
    for attr in &element.attributes {
        out.push(' ');
        out.push_str(&attr.name);
        out.push_str("=\"");
        escape_attr(out, &attr.value.to_svg_string(precision));
        out.push('"');
    }
    if element.children.is_empty() {
        out.push_str("/>");
        return;
    }
    out.push('>');
    for child in &element.children {
        write_node(out, child, precision);
    }
    out.push_str("</");
    out.push_str(&element.name);
    out.push('>');
}

fn escape_attr(out: &mut String, value: &str) {
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
}

fn escape_text(out: &mut String, value: &str) {
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_svg;

    #[test]
    fn attribute_order_is_preserved() {
        let src = r#"<svg viewBox="0 0 8 8"><rect y="1" x="2" width="3" height="4" fill="red"/></svg>"#;
        let doc = parse_svg(src).unwrap();
        assert_eq!(serialize_svg(&doc), src);
    }

    #[test]
    fn numbers_are_canonicalized() {
        let doc = parse_svg(r#"<svg><circle cx="12.50" cy="12.00" r="0.125"/></svg>"#).unwrap();
        assert_eq!(serialize_svg(&doc), r#"<svg><circle cx="12.5" cy="12" r="0.13"/></svg>"#);
    }

    #[test]
    fn escapes_round_trip() {
        let src = r#"<svg><text id="a&amp;&quot;b">x &lt; y &amp;&gt; z</text><!-- c --></svg>"#;
        let doc = parse_svg(src).unwrap();
        let out = serialize_svg(&doc);
        assert_eq!(out, src);
        assert_eq!(parse_svg(&out).unwrap(), doc);
    }

    #[test]
    fn prolog_round_trips() {
        let src = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n<!-- Generator: x -->\n<svg/>\n";
        let doc = parse_svg(src).unwrap();
        assert_eq!(serialize_svg(&doc), src);
    }
}
