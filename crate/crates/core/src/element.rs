//! The document tree.

use crate::attr::AttrValue;

macro_rules! element_kinds {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Element names this crate understands. Anything else (including
        /// namespace-prefixed editor elements) is [`ElementKind::Foreign`].
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum ElementKind {
            $($variant,)*
            Foreign,
        }

        impl ElementKind {
            pub fn from_name(name: &str) -> ElementKind {
                match name {
                    $($name => ElementKind::$variant,)*
                    _ => ElementKind::Foreign,
                }
            }

            /// Canonical tag name; `None` for foreign elements.
            pub fn name(self) -> Option<&'static str> {
                match self {
                    $(ElementKind::$variant => Some($name),)*
                    ElementKind::Foreign => None,
                }
            }
        }
    };
}

element_kinds! {
    Svg => "svg",
    G => "g",
    Defs => "defs",
    Use => "use",
    Symbol => "symbol",
    Switch => "switch",
    A => "a",
    Path => "path",
    Rect => "rect",
    Circle => "circle",
    Ellipse => "ellipse",
    Line => "line",
    Polyline => "polyline",
    Polygon => "polygon",
    Text => "text",
    Tspan => "tspan",
    TextPath => "textPath",
    LinearGradient => "linearGradient",
    RadialGradient => "radialGradient",
    Stop => "stop",
    Pattern => "pattern",
    ClipPath => "clipPath",
    Mask => "mask",
    Marker => "marker",
    Image => "image",
    Filter => "filter",
    FeGaussianBlur => "feGaussianBlur",
    FeColorMatrix => "feColorMatrix",
    FeComposite => "feComposite",
    FeBlend => "feBlend",
    FeOffset => "feOffset",
    FeFlood => "feFlood",
    FeMerge => "feMerge",
    FeMergeNode => "feMergeNode",
    FeDropShadow => "feDropShadow",
    Animate => "animate",
    AnimateMotion => "animateMotion",
    AnimateTransform => "animateTransform",
    Set => "set",
    Mpath => "mpath",
    Title => "title",
    Desc => "desc",
    Metadata => "metadata",
    Style => "style",
    Script => "script",
    ForeignObject => "foreignObject",
}

impl ElementKind {
    pub fn is_shape(self) -> bool {
        matches!(
            self,
            ElementKind::Path
                | ElementKind::Rect
                | ElementKind::Circle
                | ElementKind::Ellipse
                | ElementKind::Line
                | ElementKind::Polyline
                | ElementKind::Polygon
        )
    }

    pub fn is_animation(self) -> bool {
        matches!(self, ElementKind::Animate | ElementKind::AnimateMotion | ElementKind::AnimateTransform | ElementKind::Set)
    }

    pub fn is_text_content(self) -> bool {
        matches!(self, ElementKind::Text | ElementKind::Tspan | ElementKind::TextPath)
    }

    /// Elements whose subtree is only drawn when referenced.
    pub fn is_never_rendered_container(self) -> bool {
        matches!(
            self,
            ElementKind::Defs
                | ElementKind::Symbol
                | ElementKind::ClipPath
                | ElementKind::Mask
                | ElementKind::Pattern
                | ElementKind::Marker
                | ElementKind::LinearGradient
                | ElementKind::RadialGradient
                | ElementKind::Filter
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub name: String,
    pub value: AttrValue,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Element(Element),
    Text(String),
    CData(String),
    Comment(String),
    ProcessingInstruction(String),
    Declaration(String),
    Doctype(String),
}

impl Node {
    pub fn as_element(&self) -> Option<&Element> {
        match self {
            Node::Element(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_element_mut(&mut self) -> Option<&mut Element> {
        match self {
            Node::Element(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    /// Tag name as written, including any namespace prefix.
    pub name: String,
    pub kind: ElementKind,
    pub attributes: Vec<Attribute>,
    pub children: Vec<Node>,
}

impl Element {
    pub fn new(kind: ElementKind) -> Element {
        Element { name: kind.name().unwrap_or("unknown").to_string(), kind, attributes: Vec::new(), children: Vec::new() }
    }

    pub fn with_name(name: impl Into<String>) -> Element {
        let name = name.into();
        Element { kind: ElementKind::from_name(&name), name, attributes: Vec::new(), children: Vec::new() }
    }

    pub fn is_foreign(&self) -> bool {
        self.kind == ElementKind::Foreign
    }

    pub fn attr(&self, name: &str) -> Option<&AttrValue> {
        self.attributes.iter().find(|a| a.name == name).map(|a| &a.value)
    }

    pub fn attr_mut(&mut self, name: &str) -> Option<&mut AttrValue> {
        self.attributes.iter_mut().find(|a| a.name == name).map(|a| &mut a.value)
    }

    pub fn has_attr(&self, name: &str) -> bool {
        self.attributes.iter().any(|a| a.name == name)
    }

    /// Attribute text as it would be serialized.
    pub fn attr_text(&self, name: &str) -> Option<String> {
        self.attr(name).map(|v| v.to_string())
    }

    /// Replaces the value in place, or appends a new attribute.
    pub fn set_attr(&mut self, name: &str, value: AttrValue) {
        match self.attributes.iter_mut().find(|a| a.name == name) {
            Some(a) => a.value = value,
            None => self.attributes.push(Attribute { name: name.to_string(), value }),
        }
    }

    /// Parses `raw` with the same rules the document parser uses.
    pub fn set_attr_str(&mut self, name: &str, raw: &str) {
        let value = AttrValue::parse(self.kind, name, raw);
        self.set_attr(name, value);
    }

    pub fn remove_attr(&mut self, name: &str) -> Option<AttrValue> {
        let idx = self.attributes.iter().position(|a| a.name == name)?;
        Some(self.attributes.remove(idx).value)
    }

    pub fn id(&self) -> Option<&str> {
        match self.attr("id")? {
            AttrValue::Opaque(s) => Some(s.as_str()),
            _ => None,
        }
    }

    /// `href` or `xlink:href`, whichever is present.
    pub fn href(&self) -> Option<String> {
        self.attr("href").or_else(|| self.attr("xlink:href")).map(|v| v.to_string())
    }

    pub fn child_elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(Node::as_element)
    }

    pub fn child_elements_mut(&mut self) -> impl Iterator<Item = &mut Element> {
        self.children.iter_mut().filter_map(Node::as_element_mut)
    }

    pub fn push_child(&mut self, child: Element) {
        self.children.push(Node::Element(child));
    }

    /// Pre-order traversal over this element and all descendants.
    pub fn descendants(&self) -> Descendants<'_> {
        Descendants { stack: vec![self] }
    }

    /// Pre-order mutable visit.
    pub fn visit_mut(&mut self, f: &mut impl FnMut(&mut Element)) {
        f(self);
        for child in self.child_elements_mut() {
            child.visit_mut(f);
        }
    }

    /// Concatenated character data of direct text children.
    pub fn text_content(&self) -> String {
        let mut out = String::new();
        for child in &self.children {
            match child {
                Node::Text(t) | Node::CData(t) => out.push_str(t),
                _ => {}
            }
        }
        out
    }
}

pub struct Descendants<'a> {
    stack: Vec<&'a Element>,
}

impl<'a> Iterator for Descendants<'a> {
    type Item = &'a Element;

    fn next(&mut self) -> Option<&'a Element> {
        let next = self.stack.pop()?;
        let children: Vec<&Element> = next.child_elements().collect();
        self.stack.extend(children.into_iter().rev());
        Some(next)
    }
}

/// A parsed SVG document.
#[derive(Debug, Clone)]
pub struct Document {
    /// Nodes before the root element (declaration, doctype, comments).
    pub prolog: Vec<Node>,
    pub root: Element,
    /// Nodes after the root element.
    pub epilog: Vec<Node>,
    /// Size of the text this document was parsed from; 0 when built in code.
    pub source_bytes_len: usize,
}

impl Document {
    pub fn new(root: Element) -> Document {
        Document { prolog: Vec::new(), root, epilog: Vec::new(), source_bytes_len: 0 }
    }

    /// Finds the element carrying `id` anywhere in the tree.
    pub fn find_by_id(&self, id: &str) -> Option<&Element> {
        self.root.descendants().find(|e| e.id() == Some(id))
    }
}

/// Structural equality: the source length is provenance, not structure.
impl PartialEq for Document {
    fn eq(&self, other: &Document) -> bool {
        self.prolog == other.prolog && self.root == other.root && self.epilog == other.epilog
    }
}
