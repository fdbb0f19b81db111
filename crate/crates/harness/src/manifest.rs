//! Task manifests and prediction files, both JSONL.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    #[serde(alias = "mcq")]
    McqUnderstanding,
    Description,
    Edit,
    TextToSvg,
    ImageToSvg,
    TextToSani,
    VideoToSani,
}

impl Task {
    pub const ALL: [Task; 7] =
        [Task::McqUnderstanding, Task::Description, Task::Edit, Task::TextToSvg, Task::ImageToSvg, Task::TextToSani, Task::VideoToSani];

    pub fn name(self) -> &'static str {
        match self {
            Task::McqUnderstanding => "mcq_understanding",
            Task::Description => "description",
            Task::Edit => "edit",
            Task::TextToSvg => "text_to_svg",
            Task::ImageToSvg => "image_to_svg",
            Task::TextToSani => "text_to_sani",
            Task::VideoToSani => "video_to_sani",
        }
    }

    /// Predictions are SVG documents that get rendered.
    pub fn is_generative(self) -> bool {
        !matches!(self, Task::McqUnderstanding | Task::Description)
    }

    pub fn is_animated(self) -> bool {
        matches!(self, Task::TextToSani | Task::VideoToSani)
    }

    /// Predictions are compared with a reference in pixel space. Text
    /// conditioned generation is only rendered and exported.
    pub fn has_pixel_reference(self) -> bool {
        matches!(self, Task::Edit | Task::ImageToSvg | Task::VideoToSani)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Task, String> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        if key == "mcq" {
            return Ok(Task::McqUnderstanding);
        }
        Task::ALL.into_iter().find(|t| t.name() == key).ok_or_else(|| format!("unknown task {s:?}"))
    }
}

/// Sub-benchmark; the declaration order is the report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Icon,
    Illustration,
    Chemistry,
    Animation,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Icon => "icon",
            Domain::Illustration => "illustration",
            Domain::Chemistry => "chemistry",
            Domain::Animation => "animation",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalItem {
    pub id: String,
    pub task: Task,
    pub domain: Domain,
    pub prompt: String,
    /// Reference SVG text, or the answer letter for multiple choice. May be
    /// empty when `media_paths` holds reference images or frames.
    pub reference: String,
    /// Reference images or frames, relative to the manifest directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub media_paths: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prediction {
    pub id: String,
    pub output: String,
}

fn schema(line: usize, message: impl Into<String>) -> Error {
    Error::Schema { line, message: message.into() }
}

/// Ids become report directory names, so they must be plain path segments.
fn check_id(id: &str) -> Result<(), String> {
    if id.is_empty() || id == "." || id == ".." || id.contains(['/', '\\']) || id.chars().any(char::is_control) {
        return Err(format!("id {id:?} is not usable as a file name"));
    }
    Ok(())
}

fn check_item(item: &EvalItem) -> Result<(), String> {
    check_id(&item.id)?;
    if item.task == Task::McqUnderstanding && !matches!(item.reference.trim(), "A" | "B" | "C" | "D") {
        return Err(format!("multiple-choice reference {:?} is not one of A, B, C, D", item.reference));
    }
    let has_media = item.media_paths.as_ref().is_some_and(|m| !m.is_empty());
    if item.task.has_pixel_reference() && item.reference.trim().is_empty() && !has_media {
        return Err(format!("item {} has neither a reference SVG nor reference media", item.id));
    }
    Ok(())
}

/// Parses manifest JSONL. Blank lines are skipped; line numbers in errors
/// are 1-based.
pub fn parse_manifest(text: &str) -> Result<Vec<EvalItem>, Error> {
    let mut items = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let item: EvalItem = serde_json::from_str(line).map_err(|e| schema(i + 1, e.to_string()))?;
        check_item(&item).map_err(|m| schema(i + 1, m))?;
        if !seen.insert(item.id.clone()) {
            return Err(Error::DuplicateId(item.id));
        }
        items.push(item);
    }
    Ok(items)
}

/// Parses prediction JSONL into a map keyed by item id.
pub fn parse_predictions(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let p: Prediction = serde_json::from_str(line).map_err(|e| schema(i + 1, e.to_string()))?;
        if out.insert(p.id.clone(), p.output).is_some() {
            return Err(Error::DuplicatePrediction(p.id));
        }
    }
    Ok(out)
}

pub(crate) fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<EvalItem>, Error> {
    parse_manifest(&read_text(path.as_ref())?)
}

pub fn load_predictions(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>, Error> {
    parse_predictions(&read_text(path.as_ref())?)
}

/// Pairs every item with its prediction. Items without a prediction get an
/// empty output, which scores as wrong or penalized; predictions for ids
/// not in the manifest are rejected.
pub fn attach_predictions(items: &[EvalItem], mut preds: BTreeMap<String, String>) -> Result<Vec<(EvalItem, String)>, Error> {
    let out: Vec<(EvalItem, String)> = items
        .iter()
        .map(|item| {
            let output = preds.remove(&item.id).unwrap_or_else(|| {
                log::warn!("no prediction for {}, scored as empty", item.id);
                String::new()
            });
            (item.clone(), output)
        })
        .collect();
    if let Some(id) = preds.into_keys().next() {
        return Err(Error::UnknownPrediction(id));
    }
    Ok(out)
}
