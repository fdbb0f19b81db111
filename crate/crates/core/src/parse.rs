//! XML text to [`Document`].

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::attr::{parse_style, AttrValue, PRESENTATION_PROPERTIES};
use crate::element::{Attribute, Document, Element, ElementKind, Node};
use crate::Error;

/// Parses SVG text into a document tree.
///
/// Attribute order and element nesting are preserved; numeric, path,
/// transform and color attributes are parsed into typed values. Presentation
/// properties inside `style="..."` are lifted into attributes.
pub fn parse_svg(text: &str) -> Result<Document, Error> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(false);

    let mut prolog = Vec::new();
    let mut epilog = Vec::new();
    let mut stack: Vec<Element> = Vec::new();
    let mut root: Option<Element> = None;

    loop {
        let event = reader.read_event().map_err(|e| Error::MalformedXml(format!("{e} at byte {}", reader.error_position())))?;
        let node = match event {
            Event::Start(start) => {
                let element = start_element(&start, root.is_none() && stack.is_empty())?;
                if root.is_some() && stack.is_empty() {
                    return Err(Error::MalformedXml("more than one root element".into()));
                }
                stack.push(element);
                continue;
            }
            Event::Empty(start) => {
                if root.is_some() && stack.is_empty() {
                    return Err(Error::MalformedXml("more than one root element".into()));
                }
                let element = start_element(&start, stack.is_empty())?;
                Node::Element(element)
            }
            Event::End(_) => {
                let element = stack.pop().ok_or_else(|| Error::MalformedXml("unmatched end tag".into()))?;
                Node::Element(element)
            }
            Event::Text(t) => {
                let text = t.unescape().map_err(|e| Error::MalformedXml(e.to_string()))?;
                Node::Text(text.into_owned())
            }
            Event::CData(c) => Node::CData(utf8(&c)?),
            Event::Comment(c) => Node::Comment(utf8(&c)?),
            Event::PI(pi) => Node::ProcessingInstruction(utf8(&pi)?),
            Event::Decl(d) => Node::Declaration(utf8(&d)?),
            Event::DocType(d) => {
                let raw = utf8(&d)?;
                if raw.contains("<!ENTITY") {
                    return Err(Error::MalformedXml("entity declarations are not supported".into()));
                }
                Node::Doctype(raw)
            }
            Event::Eof => break,
        };

        if let Some(parent) = stack.last_mut() {
            parent.children.push(node);
        } else {
            match node {
                Node::Element(element) => root = Some(element),
                Node::Text(t) if !t.trim().is_empty() => return Err(Error::MalformedXml("text outside the root element".into())),
                other if root.is_none() => prolog.push(other),
                other => epilog.push(other),
            }
        }
    }

    if let Some(open) = stack.last() {
        return Err(Error::MalformedXml(format!("unclosed <{}>", open.name)));
    }
    let root = root.ok_or_else(|| Error::MalformedXml("no root element".into()))?;
    Ok(Document { prolog, root, epilog, source_bytes_len: text.len() })
}

fn utf8(bytes: &[u8]) -> Result<String, Error> {
    std::str::from_utf8(bytes).map(str::to_string).map_err(|e| Error::MalformedXml(e.to_string()))
}

fn start_element(start: &BytesStart<'_>, is_root: bool) -> Result<Element, Error> {
    let name = utf8(start.name().as_ref())?;
    if is_root && name != "svg" {
        return Err(Error::NotSvg(name));
    }
    let kind = ElementKind::from_name(&name);
    let mut raw_attrs: Vec<(String, String)> = Vec::new();
    for attr in start.attributes() {
        let attr = attr.map_err(|e| Error::MalformedXml(e.to_string()))?;
        let key = utf8(attr.key.as_ref())?;
        let value = attr.unescape_value().map_err(|e| Error::MalformedXml(e.to_string()))?;
        raw_attrs.push((key, value.into_owned()));
    }

    let mut element = Element { name, kind, attributes: Vec::with_capacity(raw_attrs.len()), children: Vec::new() };
    for (key, value) in raw_attrs {
        if key == "style" && kind != ElementKind::Foreign {
            expand_style(&mut element, &value);
        } else {
            let parsed = AttrValue::parse(kind, &key, &value);
            // a style declaration seen earlier wins over the attribute
            if !element.has_attr(&key) {
                element.attributes.push(Attribute { name: key, value: parsed });
            }
        }
    }
    Ok(element)
}

/// Lifts presentation properties out of a style block. Lifted properties
/// take the place of the `style` attribute in attribute order; any remaining
/// declarations are kept in a `style` attribute at the same position.
fn expand_style(element: &mut Element, style: &str) {
    let mut rest = Vec::new();
    for (prop, value) in parse_style(style) {
        if PRESENTATION_PROPERTIES.contains(&prop.as_str()) {
            let parsed = AttrValue::parse(element.kind, &prop, &value);
            element.set_attr(&prop, parsed);
        } else {
            rest.push(format!("{prop}:{value}"));
        }
    }
    if !rest.is_empty() {
        element.set_attr("style", AttrValue::Opaque(rest.join(";")));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{PathCommand, PathOp};

    #[test]
    fn minimal_document() {
        let doc = parse_svg(r#"<svg viewBox="0 0 128 128"/>"#).unwrap();
        assert_eq!(doc.root.name, "svg");
        assert!(doc.root.children.is_empty());
        assert_eq!(doc.root.attr("viewBox").unwrap().to_string(), "0 0 128 128");
    }

    #[test]
    fn nesting_is_mirrored() {
        let doc = parse_svg(r#"<svg><g><circle cx="4" cy="4" r="2"/></g></svg>"#).unwrap();
        let g: Vec<_> = doc.root.child_elements().collect();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].kind, ElementKind::G);
        let circles: Vec<_> = g[0].child_elements().collect();
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].kind, ElementKind::Circle);
        assert_eq!(circles[0].attr("r").unwrap().as_number(), Some(2.0));
    }

    #[test]
    fn path_data_is_typed() {
        let doc = parse_svg(r#"<svg><path d="M0 0L10 10"/></svg>"#).unwrap();
        let path = doc.root.child_elements().next().unwrap();
        assert_eq!(
            path.attr("d").unwrap().as_path().unwrap().commands,
            vec![PathCommand::new(PathOp::MoveTo, false, vec![0.0, 0.0]), PathCommand::new(PathOp::LineTo, false, vec![10.0, 10.0]),]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_svg("<svg><g></svg>"), Err(Error::MalformedXml(_))));
        assert!(matches!(parse_svg("<svg><g>"), Err(Error::MalformedXml(_))));
        assert!(matches!(parse_svg("<svg>&nbsp;</svg>"), Err(Error::MalformedXml(_))));
        assert!(matches!(parse_svg("<svg a='1' a='2'/>"), Err(Error::MalformedXml(_))));
        assert!(matches!(parse_svg(""), Err(Error::MalformedXml(_))));
        assert!(matches!(parse_svg("<svg/><svg/>"), Err(Error::MalformedXml(_))));
        assert!(matches!(parse_svg("<html/>"), Err(Error::NotSvg(n)) if n == "html"));
        assert!(matches!(parse_svg(r#"<!DOCTYPE svg [<!ENTITY a "b">]><svg>&a;</svg>"#), Err(Error::MalformedXml(_))));
    }

    #[test]
    fn builtin_entities_are_decoded() {
        let doc = parse_svg(r#"<svg><text id="a&amp;b">1 &lt; 2 &#x41;</text></svg>"#).unwrap();
        let text = doc.root.child_elements().next().unwrap();
        assert_eq!(text.id(), Some("a&b"));
        assert_eq!(text.text_content(), "1 < 2 A");
    }

    #[test]
    fn style_is_expanded_in_place() {
        let doc = parse_svg(r#"<svg><rect x="1" fill="blue" style="fill:red;stroke-width:2;font-weight:bold" y="2"/></svg>"#).unwrap();
        let rect = doc.root.child_elements().next().unwrap();
        let names: Vec<_> = rect.attributes.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["x", "fill", "stroke-width", "style", "y"]);
        assert_eq!(rect.attr_text("fill").unwrap(), "red");
        assert_eq!(rect.attr_text("style").unwrap(), "font-weight:bold");
    }

    #[test]
    fn foreign_elements_survive() {
        let doc = parse_svg(r##"<svg xmlns:sodipodi="x"><sodipodi:namedview pagecolor="#fff"/><foo/></svg>"##).unwrap();
        let kinds: Vec<_> = doc.root.child_elements().map(|e| e.kind).collect();
        assert_eq!(kinds, [ElementKind::Foreign, ElementKind::Foreign]);
    }
}
