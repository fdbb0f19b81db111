use std::collections::{HashMap, HashSet};

use crate::attr::AttrValue;
use crate::element::{Document, Element, ElementKind, Node};

/// Namespace prefixes written by editors; elements and attributes carrying
/// them never affect rendering.
const EDITOR_PREFIXES: &[&str] =
    &["inkscape", "sodipodi", "sketch", "serif", "figma", "i", "x", "graph", "a", "dc", "cc", "rdf", "adobe", "illustrator", "vectornator"];

const DROPPED_ATTRS: &[&str] = &["version", "baseProfile", "enable-background"];

/// Inherited properties with their initial values.
const INHERITED_DEFAULTS: &[(&str, &str)] = &[
    ("fill", "black"),
    ("fill-rule", "nonzero"),
    ("fill-opacity", "1"),
    ("stroke", "none"),
    ("stroke-width", "1"),
    ("stroke-opacity", "1"),
    ("stroke-linecap", "butt"),
    ("stroke-linejoin", "miter"),
    ("stroke-miterlimit", "4"),
    ("stroke-dasharray", "none"),
    ("stroke-dashoffset", "0"),
    ("clip-rule", "nonzero"),
    ("visibility", "visible"),
];

/// Non-inherited attributes whose value equals the initial value.
const PLAIN_DEFAULTS: &[(&str, &str)] = &[("opacity", "1"), ("display", "inline")];

fn geometry_defaults(kind: ElementKind) -> &'static [&'static str] {
    match kind {
        ElementKind::Rect | ElementKind::Image | ElementKind::Use => &["x", "y"],
        ElementKind::Circle | ElementKind::Ellipse => &["cx", "cy"],
        ElementKind::Line => &["x1", "y1", "x2", "y2"],
        _ => &[],
    }
}

/// Removes content that does not change the rendering: XML prolog,
/// comments, editor metadata, default-valued attributes, unreferenced ids
/// and unused definitions.
pub fn simplify(doc: &Document) -> Document {
    let mut out = Document::new(doc.root.clone());
    strip_non_rendering(&mut out.root, false);
    remove_unused_defs(&mut out.root);

    let referenced = referenced_ids(&out.root);
    let has_script = out.root.descendants().any(|e| e.kind == ElementKind::Script);
    let has_stylesheet = out.root.descendants().any(|e| e.kind == ElementKind::Style);

    if !has_stylesheet {
        let animated = animated_attributes(&out.root);
        let context: HashMap<&str, Option<String>> =
            INHERITED_DEFAULTS.iter().map(|&(name, value)| (name, Some(canonical_text(name, value)))).collect();
        drop_defaults(&mut out.root, &context, &referenced, &animated);
    }
    if !has_script {
        out.root.visit_mut(&mut |el| {
            if el.id().is_some_and(|id| !referenced.contains(id)) {
                el.remove_attr("id");
            }
        });
    }
    remove_empty_defs(&mut out.root);
    let uses_xlink = out.root.descendants().any(|e| e.attributes.iter().any(|a| a.name.starts_with("xlink:")));
    if !uses_xlink {
        out.root.remove_attr("xmlns:xlink");
    }
    out
}

fn editor_prefixed(name: &str) -> bool {
    match name.split_once(':') {
        Some(("xmlns", prefix)) => EDITOR_PREFIXES.contains(&prefix),
        Some((prefix, _)) => EDITOR_PREFIXES.contains(&prefix),
        None => false,
    }
}

fn strip_non_rendering(el: &mut Element, keep_whitespace: bool) {
    el.attributes.retain(|a| {
        if DROPPED_ATTRS.contains(&a.name.as_str()) || editor_prefixed(&a.name) {
            return false;
        }
        if a.name == "xml:space" && !el.kind.is_text_content() {
            return false;
        }
        !(a.name == "style" && a.value.to_string().trim().is_empty())
    });
    let keep_whitespace = keep_whitespace || el.kind.is_text_content() || matches!(el.kind, ElementKind::Style | ElementKind::Script);
    el.children.retain(|node| match node {
        Node::Element(child) => {
            !matches!(child.kind, ElementKind::Metadata | ElementKind::Title | ElementKind::Desc)
                && !(child.is_foreign() && child.name.contains(':'))
        }
        Node::Text(t) => keep_whitespace || !t.trim().is_empty(),
        Node::CData(_) => true,
        Node::Comment(_) | Node::ProcessingInstruction(_) | Node::Declaration(_) | Node::Doctype(_) => false,
    });
    for child in el.child_elements_mut() {
        strip_non_rendering(child, keep_whitespace);
    }
}

/// Ids named by `url(#..)`, `href="#.."`, `begin`/`end` syncbase values and
/// `#..` selectors in stylesheets.
fn referenced_ids(root: &Element) -> HashSet<String> {
    let mut ids = HashSet::new();
    for el in root.descendants() {
        collect_references(el, &mut ids);
    }
    ids
}

fn collect_references(el: &Element, ids: &mut HashSet<String>) {
    for attr in &el.attributes {
        let text = attr.value.to_string();
        collect_url_refs(&text, ids);
        match attr.name.as_str() {
            "href" | "xlink:href" => {
                if let Some(id) = text.trim().strip_prefix('#') {
                    ids.insert(id.to_string());
                }
            }
            "begin" | "end" => {
                for part in text.split(';') {
                    if let Some((id, _)) = part.trim().split_once('.') {
                        ids.insert(id.to_string());
                    }
                }
            }
            _ => {}
        }
    }
    if el.kind == ElementKind::Style {
        let css = el.text_content();
        collect_url_refs(&css, ids);
        let mut rest = css.as_str();
        while let Some(at) = rest.find('#') {
            rest = &rest[at + 1..];
            let end = rest.find(|c: char| !(c.is_alphanumeric() || c == '-' || c == '_')).unwrap_or(rest.len());
            if end > 0 {
                ids.insert(rest[..end].to_string());
            }
        }
    }
}

fn collect_url_refs(text: &str, ids: &mut HashSet<String>) {
    let mut rest = text;
    while let Some(at) = rest.find("url(") {
        rest = &rest[at + 4..];
        let inner = rest.split(')').next().unwrap_or("");
        let inner = inner.trim().trim_matches(|c| c == '\'' || c == '"');
        if let Some(id) = inner.strip_prefix('#') {
            ids.insert(id.to_string());
        }
    }
}

/// Drops `<defs>` children that nothing outside themselves references,
/// repeating until no more can go so reference chains are released in turn.
fn remove_unused_defs(root: &mut Element) {
    loop {
        let global = reference_counts(root);
        let mut removed = false;
        root.visit_mut(&mut |el| {
            if el.kind != ElementKind::Defs {
                return;
            }
            el.children.retain(|node| {
                let Node::Element(child) = node else {
                    return true;
                };
                if matches!(child.kind, ElementKind::Style | ElementKind::Script) {
                    return true;
                }
                let inside = reference_counts(child);
                let used = child
                    .descendants()
                    .filter_map(Element::id)
                    .any(|id| global.get(id).copied().unwrap_or(0) > inside.get(id).copied().unwrap_or(0));
                removed |= !used;
                used
            });
        });
        if !removed {
            break;
        }
    }
}

fn reference_counts(el: &Element) -> HashMap<String, usize> {
    let mut counts = HashMap::new();
    for e in el.descendants() {
        let mut ids = HashSet::new();
        collect_references(e, &mut ids);
        for id in ids {
            *counts.entry(id).or_insert(0) += 1;
        }
    }
    counts
}

fn remove_empty_defs(el: &mut Element) {
    el.children.retain(|node| match node {
        Node::Element(child) => !(child.kind == ElementKind::Defs && child.children.iter().all(is_blank)),
        _ => true,
    });
    for child in el.child_elements_mut() {
        remove_empty_defs(child);
    }
}

fn is_blank(node: &Node) -> bool {
    matches!(node, Node::Text(t) if t.trim().is_empty())
}

/// Attribute names targeted by animations that address their element by
/// `href`, keyed by the target id.
struct Animated {
    by_id: HashMap<String, HashSet<String>>,
}

fn animated_attributes(root: &Element) -> Animated {
    let mut by_id: HashMap<String, HashSet<String>> = HashMap::new();
    for el in root.descendants() {
        if !el.kind.is_animation() {
            continue;
        }
        let Some(target) = el.href() else { continue };
        let Some(id) = target.strip_prefix('#') else {
            continue;
        };
        by_id.entry(id.to_string()).or_default().extend(animation_target(el));
    }
    Animated { by_id }
}

fn animation_target(anim: &Element) -> Option<String> {
    match anim.kind {
        ElementKind::AnimateTransform => Some("transform".into()),
        ElementKind::AnimateMotion => None,
        _ => anim.attr_text("attributeName"),
    }
}

fn canonical_text(name: &str, raw: &str) -> String {
    match AttrValue::parse(ElementKind::G, name, raw) {
        AttrValue::Color(c) => format!("{}/{}", c.to_hex(), c.alpha),
        AttrValue::Numbers(n) => n.to_svg_string(6),
        other => other.to_string().trim().to_string(),
    }
}

fn canonical(name: &str, value: &AttrValue) -> String {
    match value {
        AttrValue::Color(c) => format!("{}/{}", c.to_hex(), c.alpha),
        AttrValue::Numbers(n) => n.to_svg_string(6),
        other => canonical_text(name, &other.to_string()),
    }
}

fn drop_defaults(el: &mut Element, inherited: &HashMap<&'static str, Option<String>>, referenced: &HashSet<String>, animated: &Animated) {
    if el.kind.is_never_rendered_container() {
        return;
    }
    let mut targeted: HashSet<String> =
        el.child_elements().filter(|c| c.kind.is_animation() && c.href().is_none()).filter_map(animation_target).collect();
    if let Some(id) = el.id() {
        if let Some(extra) = animated.by_id.get(id) {
            targeted.extend(extra.iter().cloned());
        }
    }
    let is_reused = el.id().is_some_and(|id| referenced.contains(id));

    let mut context = inherited.clone();
    let mut removable = Vec::new();
    for attr in &el.attributes {
        let name = attr.name.as_str();
        let animated_here = targeted.contains(name);
        if let Some(&(key, _)) = INHERITED_DEFAULTS.iter().find(|(n, _)| *n == name) {
            let value = canonical(name, &attr.value);
            let unchanged = context.get(key).and_then(Option::as_ref) == Some(&value);
            if unchanged && !animated_here && !is_reused {
                removable.push(attr.name.clone());
            }
            context.insert(key, (!animated_here).then_some(value));
            continue;
        }
        if animated_here || is_reused {
            continue;
        }
        let plain = PLAIN_DEFAULTS.iter().any(|&(n, d)| n == name && canonical(name, &attr.value) == canonical_text(n, d));
        let geometry = geometry_defaults(el.kind).contains(&name) && attr.value.as_number() == Some(0.0);
        if plain || geometry {
            removable.push(attr.name.clone());
        }
    }
    for name in &targeted {
        if let Some(&(key, _)) = INHERITED_DEFAULTS.iter().find(|(n, _)| n == name) {
            context.insert(key, None);
        }
    }
    for name in removable {
        el.remove_attr(&name);
    }
    for child in el.child_elements_mut() {
        drop_defaults(child, &context, referenced, animated);
    }
}
