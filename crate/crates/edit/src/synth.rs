//! Seeded batch synthesis of (original, instruction, edited) pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use svgbench_core::{serialize_svg, AttrValue, Document};
use svgbench_render::validate_renderable;

use crate::apply::{apply_edit, clamp_translation};
use crate::instruction::make_instruction;
use crate::op::{CropRegion, EditKind, EditOp, FlipAxis};
use crate::Error;

/// Sampling ranges for synthesized parameters.
pub const TRANSLATE_RANGE: i32 = 32;
pub const SCALE_RANGE: (f64, f64) = (0.5, 1.5);
pub const RIGHT_ANGLES: [f64; 3] = [90.0, 180.0, 270.0];
pub const SMALL_ROTATION: i32 = 45;
pub const OPACITY_RANGE: (f64, f64) = (0.2, 0.8);
pub const STROKE_WIDTHS: [f64; 4] = [1.0, 2.0, 3.0, 4.0];

#[derive(Debug, Clone, PartialEq)]
pub struct EditSample {
    pub id: String,
    pub doc_index: usize,
    pub original: Document,
    pub instruction: String,
    pub edited: Document,
    pub op: EditOp,
    /// Seed of the instruction template choice.
    pub seed: u64,
}

/// One line of the pairs JSONL file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub id: String,
    #[serde(flatten)]
    pub op: EditOp,
    pub instruction: String,
    pub original_svg: String,
    pub edited_svg: String,
}

impl EditSample {
    pub fn record(&self) -> PairRecord {
        PairRecord {
            id: self.id.clone(),
            op: self.op.clone(),
            instruction: self.instruction.clone(),
            original_svg: serialize_svg(&self.original),
            edited_svg: serialize_svg(&self.edited),
        }
    }
}

pub fn to_jsonl(samples: &[EditSample]) -> String {
    let mut out = String::new();
    for s in samples {
        out.push_str(&serde_json::to_string(&s.record()).expect("pair record serializes"));
        out.push('\n');
    }
    out
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

fn random_hex(rng: &mut ChaCha8Rng) -> String {
    format!("#{:06x}", rng.gen_range(0..0x100_0000u32))
}

/// Distinct paint colors in document order, as lowercase hex.
fn paint_colors(doc: &Document) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for el in doc.root.descendants() {
        for name in ["fill", "stroke", "stop-color"] {
            if let Some(AttrValue::Color(c)) = el.attr(name) {
                let hex = c.to_hex();
                if c.alpha == 1.0 && !out.contains(&hex) {
                    out.push(hex);
                }
            }
        }
    }
    out
}

/// Draws parameters for `kind`, or `None` when the document offers nothing
/// to edit.
pub fn sample_op(kind: EditKind, doc: &Document, rng: &mut ChaCha8Rng) -> Option<EditOp> {
    Some(match kind {
        EditKind::ColorEdit => {
            let colors = paint_colors(doc);
            if colors.is_empty() {
                return None;
            }
            let from_hex = colors[rng.gen_range(0..colors.len())].clone();
            let mut to_hex = random_hex(rng);
            while to_hex == from_hex {
                to_hex = random_hex(rng);
            }
            EditOp::ColorEdit { from_hex, to_hex }
        }
        EditKind::AddStroke => EditOp::AddStroke { color: random_hex(rng), width: STROKE_WIDTHS[rng.gen_range(0..STROKE_WIDTHS.len())] },
        EditKind::Translate => EditOp::Translate {
            dx: rng.gen_range(-TRANSLATE_RANGE..=TRANSLATE_RANGE) as f64,
            dy: rng.gen_range(-TRANSLATE_RANGE..=TRANSLATE_RANGE) as f64,
            bounded: true,
        },
        EditKind::Scale => EditOp::Scale { factor: round2(rng.gen_range(SCALE_RANGE.0..=SCALE_RANGE.1)) },
        EditKind::Rotate => EditOp::Rotate {
            degrees: if rng.gen_bool(0.5) {
                RIGHT_ANGLES[rng.gen_range(0..RIGHT_ANGLES.len())]
            } else {
                rng.gen_range(-SMALL_ROTATION..=SMALL_ROTATION) as f64
            },
        },
        EditKind::Flip => EditOp::Flip { axis: if rng.gen_bool(0.5) { FlipAxis::Horizontal } else { FlipAxis::Vertical } },
        EditKind::Transparency => EditOp::Transparency { opacity: round2(rng.gen_range(OPACITY_RANGE.0..=OPACITY_RANGE.1)) },
        EditKind::Crop => EditOp::Crop { region: CropRegion::ALL[rng.gen_range(0..CropRegion::ALL.len())] },
    })
}

/// Builds a single sample: bounds the op, applies it, and checks that the
/// result renders.
pub fn make_sample(doc: &Document, op: &EditOp, id: String, doc_index: usize, seed: u64) -> Result<EditSample, Error> {
    let op = clamp_translation(doc, op)?;
    let edited = apply_edit(doc, &op)?;
    validate_renderable(&edited)?;
    Ok(EditSample { id, doc_index, original: doc.clone(), instruction: make_instruction(&op, seed), edited, op, seed })
}

fn synthesize_one(index: usize, doc: &Document, ops_per_doc: usize, seed: u64) -> Vec<EditSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let offset = rng.gen_range(0..EditKind::ALL.len());
    let mut out = Vec::with_capacity(ops_per_doc);
    for j in 0..ops_per_doc {
        let kind = EditKind::ALL[(offset + j) % EditKind::ALL.len()];
        let instruction_seed: u64 = rng.gen();
        let Some(op) = sample_op(kind, doc, &mut rng) else {
            log::warn!("document {index}: nothing to apply {} to, skipped", kind.name());
            continue;
        };
        match make_sample(doc, &op, format!("{index:05}-{j}"), index, instruction_seed) {
            Ok(s) => out.push(s),
            Err(e) => log::warn!("document {index}: {} skipped: {e}", kind.name()),
        }
    }
    out
}

/// `ops_per_doc` samples per document with kinds assigned round-robin from a
/// random offset, so any eight consecutive samples of one document cover all
/// kinds. Each document draws from its own stream of `seed`, so output does
/// not depend on scheduling. Failed edits are logged and skipped.
pub fn synthesize_pairs(corpus: &[Document], ops_per_doc: usize, seed: u64) -> Vec<EditSample> {
    corpus
        .par_iter()
        .enumerate()
        .map(|(i, doc)| synthesize_one(i, doc, ops_per_doc, seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
