//! Seeded synthetic icon corpus.
//!
//! Each file exists in two forms: the raw source as an editor would export
//! it, and its canonical form after the normalization pipeline.

pub mod icon;

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use svgbench_core::{parse_svg, pipeline, serialize_svg, NormalizeConfig};

pub use icon::generate_icon;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("generated icon {name} failed to normalize: {source}")]
    Normalize { name: String, source: svgbench_core::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusConfig {
    pub count: usize,
    pub seed: u64,
    /// Share of icons that carry SMIL animation.
    pub animated_fraction: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { count: 1000, seed: 0, animated_fraction: 0.15 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusFile {
    /// File stem, e.g. `icon_00042`.
    pub name: String,
    pub raw: String,
    pub canonical: String,
    pub animated: bool,
}

/// Generates one file. Icon `index` draws from its own stream of `seed`, so
/// any file can be regenerated alone.
pub fn generate_file(index: usize, seed: u64, animated_fraction: f64) -> Result<CorpusFile, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let animated = rng.gen_bool(animated_fraction.clamp(0.0, 1.0));
    let raw = generate_icon(&mut rng, animated);
    let name = format!("icon_{index:05}");
    let canonical = parse_svg(&raw)
        .and_then(|doc| pipeline(&doc, &NormalizeConfig::default()))
        .map(|doc| serialize_svg(&doc) + "\n")
        .map_err(|source| Error::Normalize { name: name.clone(), source })?;
    Ok(CorpusFile { name, raw, canonical, animated })
}

pub fn generate_corpus(cfg: &CorpusConfig) -> Result<Vec<CorpusFile>, Error> {
    (0..cfg.count).into_par_iter().map(|i| generate_file(i, cfg.seed, cfg.animated_fraction)).collect()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

/// Writes `raw/<name>.svg` and `canonical/<name>.svg` under `dir`.
pub fn write_corpus(dir: &Path, files: &[CorpusFile]) -> Result<(), Error> {
    for sub in ["raw", "canonical"] {
        let d = dir.join(sub);
        fs::create_dir_all(&d).map_err(io_err(&d))?;
    }
    for f in files {
        let raw = dir.join("raw").join(format!("{}.svg", f.name));
        fs::write(&raw, &f.raw).map_err(io_err(&raw))?;
        let canonical = dir.join("canonical").join(format!("{}.svg", f.name));
        fs::write(&canonical, &f.canonical).map_err(io_err(&canonical))?;
    }
    Ok(())
}

/// All `*.svg` files directly under `dir`, sorted by file name.
pub fn read_svg_dir(dir: &Path) -> Result<Vec<(String, String)>, Error> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "svg"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(io_err(&p))?;
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((stem, text))
        })
        .collect()
}
