//! Canonicalization: rescaling onto a fixed canvas, code simplification and
//! numeric quantization.

mod quantize;
mod simplify;
mod viewbox;

pub use quantize::quantize_numbers;
pub use simplify::simplify;
pub use viewbox::{normalize_viewbox, source_extent, SourceExtent};

use crate::element::Document;
use crate::number::DEFAULT_PRECISION;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizeConfig {
    /// Target canvas `(width, height)` in user units.
    pub target_canvas: (f64, f64),
    /// Decimal places kept by quantization.
    pub precision: u32,
    /// Whether [`pipeline`] runs the simplifier.
    pub simplify: bool,
}

impl Default for NormalizeConfig {
    fn default() -> Self {
        NormalizeConfig { target_canvas: (128.0, 128.0), precision: DEFAULT_PRECISION, simplify: true }
    }
}

impl NormalizeConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let (w, h) = self.target_canvas;
        if !(w > 0.0 && h > 0.0 && w.is_finite() && h.is_finite()) {
            return Err(Error::Config(format!("target canvas must be positive, got {w}x{h}")));
        }
        Ok(())
    }
}

/// `normalize_viewbox`, then `simplify` (unless disabled), then
/// `quantize_numbers`.
pub fn pipeline(doc: &Document, cfg: &NormalizeConfig) -> Result<Document, Error> {
    let normalized = normalize_viewbox(doc, cfg)?;
    let simplified = if cfg.simplify { simplify(&normalized) } else { normalized };
    Ok(quantize_numbers(&simplified, cfg.precision))
}
