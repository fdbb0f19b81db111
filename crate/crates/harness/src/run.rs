//! One benchmark run: manifest and predictions in, report directory out.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use svgbench_tokenizer::Codec;

use crate::manifest::{attach_predictions, load_manifest, load_predictions, Domain, EvalItem, Task};
use crate::report::{aggregate_report, Table};
use crate::score::{score_group, MetricReport, ScoreOptions, DEFAULT_FRAMES};
use crate::Error;

pub const AGGREGATE_FILE: &str = "aggregate.json";
pub const TABLE_FILE: &str = "aggregate.txt";
pub const ITEMS_FILE: &str = "items.jsonl";
pub const FRAMES_DIR: &str = "frames";
pub const FRAMES_MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub manifest: PathBuf,
    pub predictions: PathBuf,
    pub task: Task,
    pub out: PathBuf,
    pub size: u32,
    pub n_frames: usize,
}

impl BenchConfig {
    pub fn new(manifest: impl Into<PathBuf>, predictions: impl Into<PathBuf>, task: Task, out: impl Into<PathBuf>) -> Self {
        BenchConfig {
            manifest: manifest.into(),
            predictions: predictions.into(),
            task,
            out: out.into(),
            size: svgbench_render::DEFAULT_SIZE,
            n_frames: DEFAULT_FRAMES,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub reports: Vec<MetricReport>,
    pub table: Table,
}

/// Frame export index read by external metric tools. Paths are relative to
/// the directory holding this file.
#[derive(Debug, Serialize)]
struct FramesManifest<'a> {
    size: u32,
    frames: usize,
    items: Vec<FramesEntry<'a>>,
}

#[derive(Debug, Serialize)]
struct FramesEntry<'a> {
    id: &'a str,
    task: Task,
    domain: Domain,
    prompt: &'a str,
    renderable: Option<bool>,
    reference: &'a [String],
    prediction: &'a [String],
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

/// Scores `cfg.predictions` against `cfg.manifest` and writes
/// `aggregate.json`, `aggregate.txt`, `items.jsonl` and, for rendered
/// tasks, `frames/<id>/{ref,pred}_<k>.png` plus `frames/manifest.json`.
pub fn run_bench(cfg: &BenchConfig, codec: Option<Codec>) -> Result<RunSummary, Error> {
    let items = load_manifest(&cfg.manifest)?;
    if items.is_empty() {
        return Err(Error::EmptyManifest);
    }
    if let Some(it) = items.iter().find(|it| it.task != cfg.task) {
        return Err(Error::TaskMismatch { id: it.id.clone(), expected: cfg.task, found: it.task });
    }
    let paired = attach_predictions(&items, load_predictions(&cfg.predictions)?)?;

    std::fs::create_dir_all(&cfg.out).map_err(io(&cfg.out))?;
    let frames_dir = cfg.out.join(FRAMES_DIR);
    if frames_dir.exists() {
        std::fs::remove_dir_all(&frames_dir).map_err(io(&frames_dir))?;
    }
    let opts = ScoreOptions {
        size: cfg.size,
        n_frames: cfg.n_frames,
        codec,
        media_root: cfg.manifest.parent().map(Path::to_path_buf).unwrap_or_default(),
        export_dir: cfg.task.is_generative().then(|| frames_dir.clone()),
        ..ScoreOptions::default()
    };

    let mut groups: BTreeMap<Domain, Vec<(EvalItem, String)>> = BTreeMap::new();
    for pair in paired {
        groups.entry(pair.0.domain).or_default().push(pair);
    }
    let reports = groups.values().map(|g| score_group(g, &opts)).collect::<Result<Vec<_>, _>>()?;
    let table = aggregate_report(&reports)?;

    write(&cfg.out.join(AGGREGATE_FILE), &table.to_json())?;
    write(&cfg.out.join(TABLE_FILE), &table.to_text())?;
    let mut lines = String::new();
    for it in reports.iter().flat_map(|r| &r.items) {
        lines.push_str(&serde_json::to_string(it).expect("item serializes"));
        lines.push('\n');
    }
    write(&cfg.out.join(ITEMS_FILE), &lines)?;

    if opts.export_dir.is_some() {
        let prompts: BTreeMap<&str, &str> = items.iter().map(|it| (it.id.as_str(), it.prompt.as_str())).collect();
        let entries = reports
            .iter()
            .flat_map(|r| &r.items)
            .filter_map(|it| {
                let f = it.frames.as_ref()?;
                Some(FramesEntry {
                    id: &it.id,
                    task: it.task,
                    domain: it.domain,
                    prompt: prompts[it.id.as_str()],
                    renderable: it.renderable,
                    reference: &f.reference,
                    prediction: &f.prediction,
                })
            })
            .collect();
        let manifest = FramesManifest { size: cfg.size, frames: if cfg.task.is_animated() { cfg.n_frames } else { 1 }, items: entries };
        std::fs::create_dir_all(&frames_dir).map_err(io(&frames_dir))?;
        let json = serde_json::to_string_pretty(&manifest).expect("frame manifest serializes") + "\n";
        write(&frames_dir.join(FRAMES_MANIFEST), &json)?;
    }
    Ok(RunSummary { reports, table })
}
