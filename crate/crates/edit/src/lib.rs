//! Paired edit samples for the eight low-level SVG edits: color change,
//! stroke addition, translation, scaling, rotation, flipping, transparency
//! and cropping.
//!
//! Geometric edits wrap the drawable content in a `<g>` whose transform
//! pivots on the canvas center, so the edited raster can be checked
//! against a pixel-space transform of the original.

pub mod apply;
pub mod instruction;
pub mod op;
pub mod synth;

pub use apply::{apply_edit, clamp_translation, content_box};
pub use instruction::{make_instruction, templates};
pub use op::{CropRegion, EditKind, EditOp, FlipAxis};
pub use synth::{make_sample, sample_op, synthesize_pairs, to_jsonl, EditSample, PairRecord};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("color {0} does not occur in the document")]
    ColorNotFound(String),
    #[error("document has no unstroked shapes")]
    NoShapes,
    #[error("invalid edit parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Render(#[from] svgbench_render::Error),
}
