//! SVG document model, parser, serializer, and the canonicalizing
//! normalizer that maps documents onto a fixed 128×128 canvas.

pub mod attr;
pub mod color;
pub mod element;
pub mod length;
pub mod normalize;
pub mod number;
pub mod parse;
pub mod path;
pub mod serialize;
pub mod transform;

pub use attr::{AttrValue, NumberList};
pub use color::Color;
pub use element::{Attribute, Document, Element, ElementKind, Node};
pub use normalize::{normalize_viewbox, pipeline, quantize_numbers, simplify, NormalizeConfig, SourceExtent};
pub use parse::parse_svg;
pub use path::{PathCommand, PathData, PathOp};
pub use serialize::{serialize_svg, serialize_svg_with_precision};
pub use transform::{TransformList, TransformMatrix, TransformOp};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    #[error("root element is <{0}>, not <svg>")]
    NotSvg(String),
    #[error("invalid path data at {position}: {reason}")]
    PathData { position: usize, reason: String },
    #[error("invalid transform: {0}")]
    Transform(String),
    #[error("invalid color {0:?}")]
    Color(String),
    #[error("document has neither a viewBox nor width/height")]
    NoExtent,
    #[error("degenerate source extent {width}x{height}")]
    DegenerateExtent { width: f64, height: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn path(position: usize, reason: impl Into<String>) -> Error {
        Error::PathData { position, reason: reason.into() }
    }
}
