//! Anti-aliased SVG rasterization, SMIL frame sampling and pixel-space
//! similarity metrics.
//!
//! Unrenderable documents are never skipped: [`rasterize`] turns any failure
//! into an all-black [`RenderOutcome::Penalized`] image so that invalid
//! predictions are scored rather than dropped.

pub mod canvas;
pub mod draw;
pub mod geom;
pub mod image;
pub mod metrics;
pub mod raster;
pub mod smil;
pub mod stroke;
pub mod style;

use svgbench_core::{parse_svg, Document};

pub use crate::draw::{render, root_viewbox, DEFAULT_VIEWBOX};
pub use crate::image::{RasterImage, RenderOutcome};
pub use crate::metrics::{image_metric, mse, psnr, psnr_from_mse, ssim, video_metric, Metric, PSNR_CAP};
pub use crate::smil::{animation_duration, frame_times, is_animated, sample_at};

/// Smallest supported output side in pixels.
pub const MIN_SIZE: u32 = 16;

/// Default evaluation resolution.
pub const DEFAULT_SIZE: u32 = 512;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] svgbench_core::Error),
    #[error("invalid {attribute}={value:?} on <{element}>")]
    InvalidAttribute { element: String, attribute: String, value: String },
    #[error("render size {0} is below the minimum of {MIN_SIZE}")]
    InvalidSize(u32),
    #[error("pixel buffer has {actual} bytes, expected {expected}")]
    BufferSize { expected: usize, actual: usize },
    #[error("image i/o: {0}")]
    Image(String),
    #[error("image sizes differ: {left:?} vs {right:?}")]
    DimensionMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("image {width}x{height} is smaller than the {min}px window")]
    TooSmall { width: u32, height: u32, min: u32 },
    #[error("frame counts differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// Renders `doc`, substituting the black penalty image on failure.
pub fn rasterize(doc: &Document, size: u32) -> RenderOutcome {
    match render(doc, size.max(MIN_SIZE)) {
        Ok(img) => RenderOutcome::Ok(img),
        Err(_) => RenderOutcome::penalty(size.max(MIN_SIZE)),
    }
}

/// Parses and renders SVG source; parse failures are penalized as well.
pub fn rasterize_text(text: &str, size: u32) -> RenderOutcome {
    match parse_svg(text) {
        Ok(doc) => rasterize(&doc, size),
        Err(_) => RenderOutcome::penalty(size.max(MIN_SIZE)),
    }
}

/// Checks that a document draws without error.
pub fn validate_renderable(doc: &Document) -> Result<(), Error> {
    render(doc, MIN_SIZE).map(|_| ())
}

/// Renders `n_frames` snapshots at evenly spaced times over `[0, duration]`.
///
/// When `duration` is `None` it is taken from the document's animation
/// timing; static documents yield identical frames. A document that fails to
/// render penalizes every frame.
pub fn rasterize_animation(doc: &Document, size: u32, n_frames: usize, duration: Option<f64>) -> Vec<RenderOutcome> {
    let size = size.max(MIN_SIZE);
    if render(doc, MIN_SIZE).is_err() {
        return vec![RenderOutcome::penalty(size); n_frames];
    }
    let d = duration.or_else(|| animation_duration(doc)).unwrap_or(0.0);
    frame_times(n_frames, d).into_iter().map(|t| rasterize(&sample_at(doc, t), size)).collect()
}

/// [`rasterize_animation`] from SVG source.
pub fn rasterize_animation_text(text: &str, size: u32, n_frames: usize, duration: Option<f64>) -> Vec<RenderOutcome> {
    match parse_svg(text) {
        Ok(doc) => rasterize_animation(&doc, size, n_frames, duration),
        Err(_) => vec![RenderOutcome::penalty(size.max(MIN_SIZE)); n_frames],
    }
}
