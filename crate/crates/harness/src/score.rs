//! Per-item scoring for each task family.
//!
//! Items are scored independently in parallel; every report lists its
//! items sorted by id and aggregates by a fold in that order, so the
//! result does not depend on manifest order or scheduling. Unrenderable
//! predictions are scored through black penalty images, never skipped.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use svgbench_core::parse_svg;
use svgbench_render::{
    animation_duration, image_metric, rasterize_animation, rasterize_animation_text, rasterize_text, render, video_metric, Metric,
    RasterImage, RenderOutcome, DEFAULT_SIZE,
};
use svgbench_tokenizer::Codec;

use crate::manifest::{Domain, EvalItem, Task};
use crate::Error;

pub const DEFAULT_FRAMES: usize = 8;

#[derive(Debug, Clone)]
pub struct ScoreOptions<'a> {
    /// Side of the square render in pixels.
    pub size: u32,
    /// Frames sampled per animation.
    pub n_frames: usize,
    pub metrics: Vec<Metric>,
    /// Tokenizer for prediction length statistics.
    pub codec: Option<Codec<'a>>,
    /// Directory that `media_paths` are relative to.
    pub media_root: PathBuf,
    /// Where to write `<id>/{ref,pred}_<k>.png`.
    pub export_dir: Option<PathBuf>,
}

impl Default for ScoreOptions<'_> {
    fn default() -> Self {
        ScoreOptions {
            size: DEFAULT_SIZE,
            n_frames: DEFAULT_FRAMES,
            metrics: vec![Metric::Ssim, Metric::Psnr],
            codec: None,
            media_root: PathBuf::from("."),
            export_dir: None,
        }
    }
}

pub fn metric_name(m: Metric) -> &'static str {
    match m {
        Metric::Ssim => "ssim",
        Metric::Psnr => "psnr",
        Metric::Mse => "mse",
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TokenCount {
    pub base: usize,
    pub special: usize,
}

/// Mean prediction length under the base tokenizer alone and with the
/// special vocabulary.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct TokenStats {
    pub base: f64,
    pub special: f64,
}

/// Exported frame files, relative to the export directory.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FramePaths {
    pub reference: Vec<String>,
    pub prediction: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemScore {
    pub id: String,
    pub task: Task,
    pub domain: Domain,
    /// Whether the prediction rendered; `None` for text answers.
    pub renderable: Option<bool>,
    pub scores: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tokens: Option<TokenCount>,
    /// Kept verbatim for tasks scored outside the harness.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub frames: Option<FramePaths>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub task: Task,
    pub domain: Domain,
    /// Sorted by id.
    pub items: Vec<ItemScore>,
    /// Mean of each per-item score over all items.
    pub aggregate: BTreeMap<String, f64>,
    pub tokens: Option<TokenStats>,
}

impl MetricReport {
    /// Sorts `items` by id and folds the means in that order.
    pub fn from_items(task: Task, domain: Domain, mut items: Vec<ItemScore>) -> MetricReport {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        let n = items.len() as f64;
        let mut aggregate = BTreeMap::new();
        if let Some(first) = items.first() {
            for key in first.scores.keys() {
                let sum: f64 = items.iter().map(|it| it.scores[key]).sum();
                aggregate.insert(key.clone(), sum / n);
            }
        }
        let counts: Option<Vec<TokenCount>> = items.iter().map(|it| it.tokens).collect();
        let tokens = counts.filter(|c| !c.is_empty()).map(|c| TokenStats {
            base: c.iter().map(|t| t.base as f64).sum::<f64>() / n,
            special: c.iter().map(|t| t.special as f64).sum::<f64>() / n,
        });
        MetricReport { task, domain, items, aggregate, tokens }
    }

    pub fn renderable_count(&self) -> usize {
        self.items.iter().filter(|it| it.renderable == Some(true)).count()
    }
}

/// First standalone option letter `A`–`D`, optionally followed by a
/// period. "Standalone" means not adjacent to another word character, so
/// the `A` of "Answer" does not count.
pub fn extract_choice(text: &str) -> Option<char> {
    let chars: Vec<char> = text.trim().chars().collect();
    let is_word = |c: char| c.is_alphanumeric() || c == '_';
    (0..chars.len()).find_map(|i| {
        let c = chars[i];
        let standalone = matches!(c, 'A'..='D') && (i == 0 || !is_word(chars[i - 1])) && chars.get(i + 1).is_none_or(|&n| !is_word(n));
        standalone.then_some(c)
    })
}

/// The SVG document inside a model answer: from an XML declaration or
/// `<svg` to the last `</svg>`, so surrounding prose or code fences are
/// ignored. Text without both markers is returned trimmed.
pub fn extract_svg(output: &str) -> &str {
    let start = output.find("<?xml").or_else(|| output.find("<svg"));
    let end = output.rfind("</svg>").map(|e| e + "</svg>".len());
    match (start, end) {
        (Some(s), Some(e)) if s < e => &output[s..e],
        _ => output.trim(),
    }
}

/// Mean base and special token counts; an empty list gives zeros.
pub fn count_tokens<S: AsRef<str>>(predictions: &[S], codec: &Codec) -> TokenStats {
    if predictions.is_empty() {
        return TokenStats::default();
    }
    let n = predictions.len() as f64;
    let (mut base, mut special) = (0usize, 0usize);
    for p in predictions {
        base += codec.base.encode_text(p.as_ref()).len();
        special += codec.encode(p.as_ref()).len();
    }
    TokenStats { base: base as f64 / n, special: special as f64 / n }
}

fn token_count(codec: &Option<Codec>, text: &str) -> Option<TokenCount> {
    codec.as_ref().map(|c| TokenCount { base: c.base.encode_text(text).len(), special: c.encode(text).len() })
}

fn group_key(items: &[(EvalItem, String)]) -> Result<(Task, Domain), Error> {
    let first = items.first().ok_or(Error::EmptyManifest)?;
    let key = (first.0.task, first.0.domain);
    if let Some((it, _)) = items.iter().find(|(it, _)| (it.task, it.domain) != key) {
        return Err(Error::MixedGroup { id: it.id.clone(), expected: format!("{}/{}", key.0, key.1) });
    }
    Ok(key)
}

/// Multiple-choice accuracy: each item scores 100 when the extracted
/// letter equals the reference and 0 otherwise, including unparsable
/// answers, so the aggregate is `100 * correct / total`.
pub fn score_mcq(items: &[(EvalItem, String)], opts: &ScoreOptions) -> Result<MetricReport, Error> {
    let (task, domain) = group_key(items)?;
    let scored = items
        .iter()
        .map(|(item, output)| {
            let correct = extract_choice(output).is_some_and(|c| item.reference.trim().starts_with(c));
            ItemScore {
                id: item.id.clone(),
                task,
                domain,
                renderable: None,
                scores: BTreeMap::from([("accuracy".to_string(), if correct { 100.0 } else { 0.0 })]),
                tokens: token_count(&opts.codec, output),
                output: None,
                frames: None,
            }
        })
        .collect();
    Ok(MetricReport::from_items(task, domain, scored))
}

/// Free-text descriptions are kept for external judging and not scored.
pub fn score_description(items: &[(EvalItem, String)], opts: &ScoreOptions) -> Result<MetricReport, Error> {
    let (task, domain) = group_key(items)?;
    let scored = items
        .iter()
        .map(|(item, output)| ItemScore {
            id: item.id.clone(),
            task,
            domain,
            renderable: None,
            scores: BTreeMap::new(),
            tokens: token_count(&opts.codec, output),
            output: Some(output.clone()),
            frames: None,
        })
        .collect();
    Ok(MetricReport::from_items(task, domain, scored))
}

fn bad_reference(item: &EvalItem, reason: impl ToString) -> Error {
    Error::BadReference { id: item.id.clone(), reason: reason.to_string() }
}

fn load_media(item: &EvalItem, root: &Path, size: u32) -> Result<Vec<RasterImage>, Error> {
    let paths = item.media_paths.as_deref().unwrap_or_default();
    paths
        .iter()
        .map(|p| {
            let path = root.join(p);
            if !path.is_file() {
                return Err(Error::Io {
                    path: path.clone(),
                    source: std::io::Error::new(std::io::ErrorKind::NotFound, "reference media not found"),
                });
            }
            let img = RasterImage::load_png(&path).map_err(|e| bad_reference(item, e))?;
            if (img.width, img.height) != (size, size) {
                return Err(bad_reference(item, format!("{p} is {}x{}, expected {size}x{size}", img.width, img.height)));
            }
            Ok(img)
        })
        .collect()
}

/// Rendered or loaded reference frames.
struct Reference {
    frames: Vec<RasterImage>,
    /// Animation duration the frames were sampled over, when known.
    duration: Option<f64>,
}

/// `None` when the item carries no reference at all.
fn reference_frames(item: &EvalItem, n: usize, opts: &ScoreOptions) -> Result<Option<Reference>, Error> {
    let text = item.reference.trim();
    if text.is_empty() {
        if item.media_paths.as_ref().is_none_or(|m| m.is_empty()) {
            return Ok(None);
        }
        let frames = load_media(item, &opts.media_root, opts.size)?;
        if frames.len() != n {
            return Err(Error::FrameCountMismatch { id: item.id.clone(), expected: n, found: frames.len() });
        }
        return Ok(Some(Reference { frames, duration: None }));
    }
    let doc = parse_svg(extract_svg(text)).map_err(|e| bad_reference(item, e))?;
    let still = render(&doc, opts.size).map_err(|e| bad_reference(item, e))?;
    if !item.task.is_animated() {
        return Ok(Some(Reference { frames: vec![still], duration: None }));
    }
    let duration = animation_duration(&doc);
    let frames = rasterize_animation(&doc, opts.size, n, duration);
    if let Some(k) = frames.iter().position(RenderOutcome::is_penalized) {
        return Err(bad_reference(item, format!("frame {k} does not render")));
    }
    Ok(Some(Reference { frames: frames.into_iter().map(RenderOutcome::into_image).collect(), duration }))
}

fn export(dir: &Path, id: &str, prefix: &str, frames: &[&RasterImage]) -> Result<Vec<String>, Error> {
    let item_dir = dir.join(id);
    std::fs::create_dir_all(&item_dir).map_err(|source| Error::Io { path: item_dir.clone(), source })?;
    frames
        .iter()
        .enumerate()
        .map(|(k, img)| {
            let name = format!("{prefix}_{k}.png");
            img.save_png(item_dir.join(&name))?;
            Ok(format!("{id}/{name}"))
        })
        .collect()
}

fn score_rendered(item: &EvalItem, output: &str, opts: &ScoreOptions) -> Result<ItemScore, Error> {
    let n = if item.task.is_animated() { opts.n_frames.max(1) } else { 1 };
    let reference = reference_frames(item, n, opts)?;
    let svg = extract_svg(output);
    let pred: Vec<RenderOutcome> = if item.task.is_animated() {
        let duration = reference.as_ref().and_then(|r| r.duration);
        rasterize_animation_text(svg, opts.size, n, duration)
    } else {
        vec![rasterize_text(svg, opts.size)]
    };
    let renderable = !pred.iter().any(RenderOutcome::is_penalized);
    if !renderable {
        log::debug!("{}: prediction penalized", item.id);
    }
    let mut scores = BTreeMap::new();
    if item.task.has_pixel_reference() {
        let ref_frames = &reference.as_ref().ok_or_else(|| bad_reference(item, "no reference"))?.frames;
        let ref_outcomes: Vec<RenderOutcome> = ref_frames.iter().cloned().map(RenderOutcome::Ok).collect();
        for &m in &opts.metrics {
            let v = if n == 1 { image_metric(&ref_frames[0], pred[0].image(), m)? } else { video_metric(&ref_outcomes, &pred, m)? };
            scores.insert(metric_name(m).to_string(), v);
        }
    }
    let frames = match &opts.export_dir {
        Some(dir) => Some(FramePaths {
            reference: match &reference {
                Some(r) => export(dir, &item.id, "ref", &r.frames.iter().collect::<Vec<_>>())?,
                None => Vec::new(),
            },
            prediction: export(dir, &item.id, "pred", &pred.iter().map(RenderOutcome::image).collect::<Vec<_>>())?,
        }),
        None => None,
    };
    Ok(ItemScore {
        id: item.id.clone(),
        task: item.task,
        domain: item.domain,
        renderable: Some(renderable),
        scores,
        tokens: token_count(&opts.codec, output),
        output: None,
        frames,
    })
}

fn score_generative(items: &[(EvalItem, String)], opts: &ScoreOptions) -> Result<MetricReport, Error> {
    let (task, domain) = group_key(items)?;
    let scored = items.par_iter().map(|(item, output)| score_rendered(item, output, opts)).collect::<Result<Vec<_>, _>>()?;
    Ok(MetricReport::from_items(task, domain, scored))
}

/// Renders each prediction (black on failure) and compares it with the
/// rendered reference. Text-conditioned tasks are rendered and exported
/// without pixel scores.
pub fn score_pixels(items: &[(EvalItem, String)], opts: &ScoreOptions) -> Result<MetricReport, Error> {
    score_generative(items, opts)
}

/// Samples both sides at `opts.n_frames` timestamps over the reference
/// duration and averages per-frame scores per item. Reference frame sets
/// must hold exactly `opts.n_frames` images.
pub fn score_animation(items: &[(EvalItem, String)], opts: &ScoreOptions) -> Result<MetricReport, Error> {
    score_generative(items, opts)
}

/// Dispatches on the task of the group.
pub fn score_group(items: &[(EvalItem, String)], opts: &ScoreOptions) -> Result<MetricReport, Error> {
    let (task, _) = group_key(items)?;
    match task {
        Task::McqUnderstanding => score_mcq(items, opts),
        Task::Description => score_description(items, opts),
        Task::Edit | Task::TextToSvg | Task::ImageToSvg => score_pixels(items, opts),
        Task::TextToSani | Task::VideoToSani => score_animation(items, opts),
    }
}
