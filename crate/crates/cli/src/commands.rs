use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::json;
use svgbench_core::{parse_svg, pipeline, serialize_svg_with_precision, NormalizeConfig};
use svgbench_corpus::{generate_corpus, read_svg_dir, write_corpus, CorpusConfig};
use svgbench_edit::{synthesize_pairs, to_jsonl};
use svgbench_harness::{run_bench, BenchConfig};
use svgbench_render::{animation_duration, frame_times, psnr, render as render_doc, sample_at, ssim, validate_renderable, RasterImage};
use svgbench_tokenizer::{
    build_vocab, compression_stats, init_embeddings, row_index, stack_rows, Codec, EmbeddingMatrix, PieceTokenizer, SpecialVocab,
};

use crate::{
    BenchRunArgs, EditSynthArgs, GenCorpusArgs, InitEmbedArgs, MetricArgs, NormalizeArgs, RenderArgs, TokenizeArgs, TokenizerArgs,
};

/// Writes to stdout, surfacing a closed pipe as an error instead of a panic.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load_tokenizer(args: &TokenizerArgs) -> Result<(PieceTokenizer, SpecialVocab)> {
    let base = match &args.base_vocab {
        Some(p) => PieceTokenizer::from_vocab_json(&read(p)?).with_context(|| format!("loading {}", p.display()))?,
        None => PieceTokenizer::synthetic(),
    };
    let vocab = match &args.vocab {
        Some(p) => SpecialVocab::from_manifest_json(&read(p)?).with_context(|| format!("loading {}", p.display()))?,
        None => build_vocab(),
    };
    Ok((base, vocab))
}

/// Canonical text and whether it renders.
fn normalize_text(text: &str, cfg: &NormalizeConfig) -> Result<(String, bool)> {
    let doc = pipeline(&parse_svg(text)?, cfg)?;
    Ok((serialize_svg_with_precision(&doc, cfg.precision) + "\n", validate_renderable(&doc).is_ok()))
}

pub fn normalize(a: &NormalizeArgs) -> Result<ExitCode> {
    let cfg = NormalizeConfig { target_canvas: (a.canvas, a.canvas), precision: a.precision, simplify: !a.no_simplify };
    cfg.validate()?;
    if !a.input.is_dir() {
        let (out, _) = normalize_text(&read(&a.input)?, &cfg).with_context(|| a.input.display().to_string())?;
        match &a.out {
            Some(p) => write(p, out)?,
            None => emit(&out)?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    let Some(out_dir) = &a.out else {
        bail!("--out is required when the input is a directory");
    };
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut failed = 0;
    for (stem, text) in read_svg_dir(&a.input)? {
        let file = format!("{stem}.svg");
        let line = match normalize_text(&text, &cfg) {
            Ok((out, renderable)) => {
                let line = json!({"file": file, "bytes_before": text.len(), "bytes_after": out.len(), "renderable": renderable});
                write(&out_dir.join(&file), out)?;
                line
            }
            Err(e) => {
                failed += 1;
                json!({"file": file, "bytes_before": text.len(), "error": format!("{e:#}")})
            }
        };
        emit(&format!("{line}\n"))?;
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

pub fn tokenize(a: &TokenizeArgs) -> Result<ExitCode> {
    let (base, vocab) = load_tokenizer(&a.tokenizer)?;
    let codec = Codec::new(&base, &vocab);
    if a.stats {
        let texts: Vec<String> =
            if a.input.is_dir() { read_svg_dir(&a.input)?.into_iter().map(|(_, t)| t).collect() } else { vec![read(&a.input)?] };
        let stats = compression_stats(&texts, &codec)?;
        let summary = json!({
            "files": stats.files,
            "mean_base_tokens": stats.mean_before,
            "mean_special_tokens": stats.mean_after,
            "ratio": stats.ratio,
            "ratio_histogram": stats.ratio_histogram,
        });
        emit(&(serde_json::to_string_pretty(&summary)? + "\n"))?;
        return Ok(ExitCode::SUCCESS);
    }
    if a.input.is_dir() {
        bail!("{} is a directory; only --stats accepts one", a.input.display());
    }
    let ids = codec.encode(&read(&a.input)?);
    if a.pretty {
        let mut text = String::new();
        for id in ids {
            let kind = if codec.is_special(id) { "special" } else { "base" };
            text += &format!("{id}\t{kind}\t{:?}\n", codec.token_text(id)?);
        }
        emit(&text)?;
    } else {
        let line: Vec<String> = ids.iter().map(u32::to_string).collect();
        emit(&(line.join(" ") + "\n"))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn init_embed(a: &InitEmbedArgs) -> Result<ExitCode> {
    let (base, vocab) = load_tokenizer(&a.tokenizer)?;
    let emb = EmbeddingMatrix::read(&a.base_emb, base.vocab_size())
        .with_context(|| format!("{} does not hold {} rows", a.base_emb.display(), base.vocab_size()))?;
    let inits = init_embeddings(&vocab, &base, &emb)?;
    write(&a.out, stack_rows(&inits)?.to_le_bytes())?;
    let index = a.out.with_extension("json");
    write(&index, serde_json::to_string_pretty(&row_index(&inits))? + "\n")?;
    eprintln!("{} rows of dimension {} written to {}", inits.len(), emb.dim, a.out.display());
    Ok(ExitCode::SUCCESS)
}

pub fn render(a: &RenderArgs) -> Result<ExitCode> {
    let doc = parse_svg(&read(&a.input)?)?;
    let Some(n) = a.frames else {
        let out = a.out.as_ref().expect("clap requires --out without --frames");
        render_doc(&doc, a.size)?.save_png(out)?;
        return Ok(ExitCode::SUCCESS);
    };
    let dir = a.out_dir.as_ref().expect("clap requires --out-dir with --frames");
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let duration = a.duration.or_else(|| animation_duration(&doc)).unwrap_or(0.0);
    for (k, t) in frame_times(n, duration).into_iter().enumerate() {
        render_doc(&sample_at(&doc, t), a.size)?.save_png(dir.join(format!("frame_{k}.png")))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn metric(a: &MetricArgs) -> Result<ExitCode> {
    let reference = RasterImage::load_png(&a.reference).with_context(|| a.reference.display().to_string())?;
    let pred = RasterImage::load_png(&a.pred).with_context(|| a.pred.display().to_string())?;
    let both = !a.ssim && !a.psnr;
    let mut out = serde_json::Map::new();
    if a.ssim || both {
        out.insert("ssim".into(), json!(ssim(&reference, &pred)?));
    }
    if a.psnr || both {
        out.insert("psnr".into(), json!(psnr(&reference, &pred)?));
    }
    emit(&format!("{}\n", serde_json::Value::Object(out)))?;
    Ok(ExitCode::SUCCESS)
}

pub fn edit_synth(a: &EditSynthArgs) -> Result<ExitCode> {
    let mut docs = Vec::new();
    for (stem, text) in read_svg_dir(&a.corpus)? {
        match parse_svg(&text) {
            Ok(doc) => docs.push(doc),
            Err(e) => log::warn!("{stem}: skipped: {e}"),
        }
    }
    if docs.is_empty() {
        bail!("no parsable SVG files in {}", a.corpus.display());
    }
    let samples = synthesize_pairs(&docs, a.ops_per_doc, a.seed);
    write(&a.out, to_jsonl(&samples))?;
    eprintln!("{} pairs from {} documents written to {}", samples.len(), docs.len(), a.out.display());
    Ok(ExitCode::SUCCESS)
}

pub fn gen_corpus(a: &GenCorpusArgs) -> Result<ExitCode> {
    let cfg = CorpusConfig { count: a.count, seed: a.seed, animated_fraction: a.animated_fraction };
    let files = generate_corpus(&cfg)?;
    write_corpus(&a.out, &files)?;
    eprintln!("{} icons written to {}", files.len(), a.out.display());
    Ok(ExitCode::SUCCESS)
}

pub fn bench_run(a: &BenchRunArgs) -> Result<ExitCode> {
    let (base, vocab) = load_tokenizer(&a.tokenizer)?;
    let cfg = BenchConfig { size: a.size, n_frames: a.frames, ..BenchConfig::new(&a.manifest, &a.pred, a.task, &a.out) };
    let summary = run_bench(&cfg, Some(Codec::new(&base, &vocab)))?;
    emit(&summary.table.to_text())?;
    Ok(ExitCode::SUCCESS)
}
