//! Benchmark harness: JSONL task manifests and prediction files in,
//! per-item scores and aggregate tables out.
//!
//! Multiple-choice understanding is scored by accuracy. Edit and
//! image-to-SVG predictions are rendered and compared with the rendered
//! reference by SSIM and PSNR; animations are compared frame by frame.
//! A prediction that fails to parse or render is replaced by an all-black
//! image (or video) and scored, never dropped. Every rendered pair is
//! exported as PNG together with `frames/manifest.json` so that neural
//! metrics can be computed elsewhere from the same pixels.

use std::path::PathBuf;

pub mod manifest;
pub mod report;
pub mod run;
pub mod score;

pub use manifest::{
    attach_predictions, load_manifest, load_predictions, parse_manifest, parse_predictions, Domain, EvalItem, Prediction, Task,
};
pub use report::{aggregate_report, Row, Table};
pub use run::{run_bench, BenchConfig, RunSummary};
pub use score::{
    count_tokens, extract_choice, extract_svg, score_animation, score_description, score_group, score_mcq, score_pixels, FramePaths,
    ItemScore, MetricReport, ScoreOptions, TokenCount, TokenStats,
};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("duplicate item id {0}")]
    DuplicateId(String),
    #[error("duplicate prediction for {0}")]
    DuplicatePrediction(String),
    #[error("prediction for unknown item {0}")]
    UnknownPrediction(String),
    #[error("item {id} has task {found}, expected {expected}")]
    TaskMismatch { id: String, expected: Task, found: Task },
    #[error("manifest has no items")]
    EmptyManifest,
    #[error("item {id} does not belong to group {expected}")]
    MixedGroup { id: String, expected: String },
    #[error("item {id}: {found} reference frames, expected {expected}")]
    FrameCountMismatch { id: String, expected: usize, found: usize },
    #[error("item {id}: unusable reference: {reason}")]
    BadReference { id: String, reason: String },
    #[error("more than one report for {task}/{domain}")]
    DuplicateKey { task: Task, domain: Domain },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Render(#[from] svgbench_render::Error),
}

impl Error {
    /// Malformed manifest or prediction files, as opposed to I/O or
    /// scoring failures.
    pub fn is_schema_violation(&self) -> bool {
        matches!(
            self,
            Error::Schema { .. }
                | Error::DuplicateId(_)
                | Error::DuplicatePrediction(_)
                | Error::UnknownPrediction(_)
                | Error::TaskMismatch { .. }
        )
    }
}
