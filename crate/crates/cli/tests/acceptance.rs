//! End-to-end acceptance checks. Each test prints one `PASS` or `FAIL`
//! line with the measured values and the pinned thresholds.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use svgbench_core::{parse_svg, pipeline, serialize_svg, Document, NormalizeConfig};
use svgbench_corpus::{generate_corpus, CorpusConfig, CorpusFile};
use svgbench_edit::{apply_edit, clamp_translation, sample_op, synthesize_pairs, EditKind, EditOp, FlipAxis};
use svgbench_harness::ItemScore;
use svgbench_render::{psnr, rasterize_animation, render, ssim, RasterImage};
use svgbench_tokenizer::{build_vocab, compression_stats, init_embeddings, Codec, EmbeddingMatrix, PieceTokenizer};

const ROUND_TRIP_FILES: usize = 1000;
const ROUND_TRIP_SECONDS: f64 = 10.0;
const MAX_COMPRESSION_RATIO: f64 = 0.8;
const SPECIAL_TOKENS: usize = 464;
const EMBED_DIM: usize = 64;
const EMBED_TOLERANCE: f64 = 1e-6;
const NORMALIZE_FILES: usize = 200;
const NORMALIZE_SIZE: u32 = 512;
const NORMALIZE_MIN_SHARE: f64 = 0.999;
const ORACLE_ICONS: usize = 100;
const ORACLE_SIZE: u32 = 512;
const ORACLE_MIN_EXACT: f64 = 0.995;
const ORACLE_MAX_DIFF: u8 = 1;
const SSIM_PAIRS: usize = 50;
const SSIM_SYMMETRY: f64 = 1e-9;
const CENTROID_TOLERANCE: f64 = 1.0;

fn report(pass: bool, name: &str, detail: &str) {
    let line = format!("{} {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    // written past the test harness capture so every line shows up
    std::io::stderr().write_all(line.as_bytes()).unwrap();
}

fn corpus() -> &'static [CorpusFile] {
    static CORPUS: OnceLock<Vec<CorpusFile>> = OnceLock::new();
    CORPUS.get_or_init(|| generate_corpus(&CorpusConfig { count: ROUND_TRIP_FILES, ..CorpusConfig::default() }).unwrap())
}

fn svgbench(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_svgbench")).args(args).output().unwrap()
}

fn write_jsonl(path: &Path, lines: &[Value]) {
    let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
    std::fs::write(path, text).unwrap();
}

/// Runs `bench run` and returns the parsed aggregate table and items.
fn bench_run(dir: &Path, task: &str, items: &[Value], preds: &[Value], out: &str) -> (Value, Vec<ItemScore>, Vec<u8>) {
    write_jsonl(&dir.join("manifest.jsonl"), items);
    write_jsonl(&dir.join("pred.jsonl"), preds);
    let out = dir.join(out);
    let status = svgbench(&[
        "bench",
        "run",
        "--manifest",
        dir.join("manifest.jsonl").to_str().unwrap(),
        "--pred",
        dir.join("pred.jsonl").to_str().unwrap(),
        "--task",
        task,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let bytes = std::fs::read(out.join("aggregate.json")).unwrap();
    let items = std::fs::read_to_string(out.join("items.jsonl")).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    (serde_json::from_slice(&bytes).unwrap(), items, bytes)
}

#[test]
fn tokenizer_round_trip() {
    let base = PieceTokenizer::synthetic();
    let vocab = build_vocab();
    let codec = Codec::new(&base, &vocab);
    let files = corpus();
    let start = Instant::now();
    let failures = files.iter().filter(|f| codec.decode(&codec.encode(&f.canonical)).ok().as_deref() != Some(f.canonical.as_str())).count();
    let secs = start.elapsed().as_secs_f64();
    let pass = files.len() == ROUND_TRIP_FILES && failures == 0 && secs < ROUND_TRIP_SECONDS;
    report(
        pass,
        "tokenizer round-trip",
        &format!("{} canonical files, {failures} failures, {secs:.2} s (limit {ROUND_TRIP_SECONDS} s)", files.len()),
    );
    assert!(pass);
}

#[test]
fn compression_effect() {
    let base = PieceTokenizer::synthetic();
    let vocab = build_vocab();
    let codec = Codec::new(&base, &vocab);
    let texts: Vec<&str> = corpus().iter().map(|f| f.canonical.as_str()).collect();
    let stats = compression_stats(&texts, &codec).unwrap();
    let pass = stats.mean_after < stats.mean_before && stats.ratio <= MAX_COMPRESSION_RATIO;
    report(
        pass,
        "compression effect",
        &format!(
            "mean tokens {:.1} -> {:.1}, ratio {:.4} (limit {MAX_COMPRESSION_RATIO})",
            stats.mean_before, stats.mean_after, stats.ratio
        ),
    );
    let h = &stats.ratio_histogram;
    let mut lines = String::from("     per-file ratio histogram:\n");
    for (edge, count) in h.edges.iter().zip(&h.counts).filter(|(_, c)| **c > 0) {
        lines += &format!("       [{edge:.2}, {:.2}) {count}\n", edge + (h.edges[1] - h.edges[0]));
    }
    std::io::stderr().write_all(lines.as_bytes()).unwrap();
    assert!(pass);
}

#[test]
fn embedding_init_matches_brute_force_mean() {
    let base = PieceTokenizer::synthetic();
    let vocab = build_vocab();
    let emb = EmbeddingMatrix::random(base.vocab_size(), EMBED_DIM, 17);
    let inits = init_embeddings(&vocab, &base, &emb).unwrap();
    let mut worst = 0.0f64;
    let mut bad_split = 0;
    for (init, token) in inits.iter().zip(vocab.tokens()) {
        let ids = base.encode_text(&token.text);
        if base.decode_bytes(&ids).unwrap() != token.text.as_bytes() {
            bad_split += 1;
        }
        for j in 0..EMBED_DIM {
            let mut sum = 0.0f64;
            for &id in &ids {
                sum += emb.data[id as usize * EMBED_DIM + j] as f64;
            }
            worst = worst.max((init.vector[j] as f64 - sum / ids.len() as f64).abs());
        }
    }
    let pass = inits.len() == SPECIAL_TOKENS && bad_split == 0 && worst <= EMBED_TOLERANCE;
    report(pass, "embedding initialization", &format!("{} tokens, max |init - mean| {worst:.2e} (limit {EMBED_TOLERANCE:e})", inits.len()));
    assert!(pass);
}

/// Share of pixels whose largest channel difference is at most 1.
fn close_share(a: &RasterImage, b: &RasterImage) -> (usize, usize) {
    let close = a.data.chunks(3).zip(b.data.chunks(3)).filter(|(p, q)| p.iter().zip(q.iter()).all(|(x, y)| x.abs_diff(*y) <= 1)).count();
    (close, a.data.len() / 3)
}

#[test]
fn normalization_preserves_renders() {
    let files = &corpus()[..NORMALIZE_FILES];
    let results: Vec<(String, usize, usize, bool)> = files
        .par_iter()
        .map(|f| {
            let raw = parse_svg(&f.raw).unwrap();
            let canonical = parse_svg(&f.canonical).unwrap();
            let (close, total) = close_share(&render(&raw, NORMALIZE_SIZE).unwrap(), &render(&canonical, NORMALIZE_SIZE).unwrap());
            let again = serialize_svg(&pipeline(&canonical, &NormalizeConfig::default()).unwrap()) + "\n";
            (f.name.clone(), close, total, again == f.canonical)
        })
        .collect();
    let below: Vec<&(String, usize, usize, bool)> =
        results.iter().filter(|(_, c, t, _)| (*c as f64) < NORMALIZE_MIN_SHARE * *t as f64).collect();
    let worst = results.iter().map(|(_, c, t, _)| *c as f64 / *t as f64).fold(1.0, f64::min);
    let pooled = results.iter().map(|r| r.1).sum::<usize>() as f64 / results.iter().map(|r| r.2).sum::<usize>() as f64;
    let not_idempotent = results.iter().filter(|r| !r.3).count();
    let pass = below.is_empty() && not_idempotent == 0;
    report(
        pass,
        "normalization render preservation",
        &format!(
            "{} files at {NORMALIZE_SIZE}px, {} below {:.1}% of pixels within 1 (worst {:.3}%, pooled {:.3}%), {not_idempotent} not idempotent",
            results.len(),
            below.len(),
            NORMALIZE_MIN_SHARE * 100.0,
            worst * 100.0,
            pooled * 100.0
        ),
    );
    assert!(pass, "files below threshold: {:?}", below.iter().map(|b| &b.0).collect::<Vec<_>>());
}

fn compare(a: &RasterImage, b: &RasterImage) -> (f64, u8) {
    let mut exact = 0usize;
    let mut max = 0u8;
    for (p, q) in a.data.chunks(3).zip(b.data.chunks(3)) {
        let d = p.iter().zip(q).map(|(x, y)| x.abs_diff(*y)).max().unwrap();
        exact += (d == 0) as usize;
        max = max.max(d);
    }
    (exact as f64 / (a.data.len() / 3) as f64, max)
}

#[test]
fn edit_raster_oracles() {
    let px_per_unit = ORACLE_SIZE as f64 / 128.0;
    let docs: Vec<Document> = corpus()[..ORACLE_ICONS].iter().map(|f| parse_svg(&f.canonical).unwrap()).collect();
    let failures: Vec<String> = docs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, doc)| {
            let before = render(doc, ORACLE_SIZE).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let translate = clamp_translation(doc, &sample_op(EditKind::Translate, doc, &mut rng).unwrap()).unwrap();
            let EditOp::Translate { dx, dy, .. } = translate else { unreachable!() };
            let cases: Vec<(EditOp, RasterImage)> = vec![
                (translate, before.translate((dx * px_per_unit) as i64, (dy * px_per_unit) as i64)),
                (EditOp::Flip { axis: FlipAxis::Horizontal }, before.flip_horizontal()),
                (EditOp::Flip { axis: FlipAxis::Vertical }, before.flip_vertical()),
                (EditOp::Rotate { degrees: 90.0 }, before.rotate90_cw()),
                (EditOp::Rotate { degrees: 180.0 }, before.rotate90_cw().rotate90_cw()),
                (EditOp::Rotate { degrees: 270.0 }, before.rotate90_cw().rotate90_cw().rotate90_cw()),
            ];
            let mut out = Vec::new();
            for (op, expected) in cases {
                let after = render(&apply_edit(doc, &op).unwrap(), ORACLE_SIZE).unwrap();
                let (exact, max) = compare(&after, &expected);
                if exact < ORACLE_MIN_EXACT || max > ORACLE_MAX_DIFF {
                    out.push(format!("icon {i} {op:?}: exact {exact:.5}, max diff {max}"));
                }
            }
            out
        })
        .collect();
    let pass = failures.is_empty();
    report(
        pass,
        "edit raster oracles",
        &format!(
            "{ORACLE_ICONS} icons x 6 edits (translate, 2 flips, 3 quarter turns) at {ORACLE_SIZE}px, {} failing (min exact {ORACLE_MIN_EXACT}, max diff {ORACLE_MAX_DIFF})",
            failures.len()
        ),
    );
    assert!(pass, "{failures:#?}");
}

#[test]
fn perfect_edit_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let docs: Vec<Document> = corpus()[..25].iter().map(|f| parse_svg(&f.canonical).unwrap()).collect();
    let pairs = synthesize_pairs(&docs, 2, 5);
    let items: Vec<Value> = pairs
        .iter()
        .map(|p| {
            let r = p.record();
            json!({"id": r.id, "task": "edit", "domain": "icon", "prompt": r.instruction, "reference": r.edited_svg})
        })
        .collect();
    let preds: Vec<Value> = pairs.iter().map(|p| json!({"id": p.id, "output": p.record().edited_svg})).collect();
    let (table, scored, _) = bench_run(dir.path(), "edit", &items, &preds, "report");
    let row = &table["rows"][0];
    let (s, p) = (row["metrics"]["ssim"].as_f64().unwrap(), row["metrics"]["psnr"].as_f64().unwrap());
    let pass = s == 1.0 && p == 100.0 && scored.len() == pairs.len() && table["rows"].as_array().unwrap().len() == 1;
    report(pass, "perfect-edit ceiling", &format!("{} items, SSIM {s:.3}, PSNR {p:.3} (required 1.000 and 100.000 exactly)", scored.len()));
    assert!(pass);
}

#[test]
fn penalty_protocol() {
    let dir = tempfile::tempdir().unwrap();
    let white = r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 128 128"/>"#;
    let broken = [
        "<svg viewBox=\"0 0 128 128\"><rect x=\"10\"",
        "I cannot draw that.",
        "",
        "<svg viewBox=\"0 0 128 128\"><path d=\"M 10 10 L\"/></svg>",
        "<svg viewBox=\"0 0 0 128\"><rect width=\"10\" height=\"10\"/></svg>",
        "<svg viewBox=\"0 0 128 128\"><rect width=\"10\" height=\"10\"></svg>",
    ];
    let items: Vec<Value> = (0..broken.len())
        .map(|i| json!({"id": format!("b{i}"), "task": "edit", "domain": "icon", "prompt": "", "reference": white}))
        .collect();
    let preds: Vec<Value> = broken.iter().enumerate().map(|(i, b)| json!({"id": format!("b{i}"), "output": b})).collect();
    let (_, scored, _) = bench_run(dir.path(), "edit", &items, &preds, "report");
    let black = RasterImage::black(svgbench_render::DEFAULT_SIZE, svgbench_render::DEFAULT_SIZE);
    let frames_black =
        scored.iter().all(|it| RasterImage::load_png(dir.path().join("report/frames").join(&it.id).join("pred_0.png")).unwrap() == black);
    let zero = scored.iter().filter(|it| it.scores["psnr"] == 0.0 && it.renderable == Some(false)).count();
    let pass = scored.len() == broken.len() && zero == broken.len() && frames_black;
    report(
        pass,
        "penalty protocol",
        &format!(
            "{} broken predictions, {zero} scored at exactly 0.0 dB against a white reference, black renders: {frames_black}",
            broken.len()
        ),
    );
    assert!(pass);
}

#[test]
fn psnr_and_ssim_units() {
    let (black, white) = (RasterImage::black(64, 64), RasterImage::white(64, 64));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random = |rng: &mut ChaCha8Rng| {
        let (w, h) = (rng.gen_range(11..80), rng.gen_range(11..80));
        let data = (0..w * h * 3).map(|_| rng.gen()).collect();
        (RasterImage::from_raw(w, h, data).unwrap(), (w, h))
    };
    let (x, _) = random(&mut rng);
    let mut asym = 0.0f64;
    for _ in 0..SSIM_PAIRS {
        let (a, (w, h)) = random(&mut rng);
        let mut b = a.clone();
        // a correlated partner: noise added to a copy
        for v in b.data.iter_mut() {
            *v = v.saturating_add(rng.gen_range(0..60));
        }
        assert_eq!((b.width, b.height), (w, h));
        asym = asym.max((ssim(&a, &b).unwrap() - ssim(&b, &a).unwrap()).abs());
    }
    let pb = psnr(&black, &white).unwrap();
    let px = psnr(&x, &x).unwrap();
    let sx = ssim(&x, &x).unwrap();
    let pass = pb == 0.0 && px == 100.0 && sx == 1.0 && asym < SSIM_SYMMETRY;
    report(
        pass,
        "psnr/ssim units",
        &format!("psnr(black, white) {pb}, psnr(x, x) {px}, ssim(x, x) {sx}, max ssim asymmetry {asym:.1e} over {SSIM_PAIRS} pairs (limit {SSIM_SYMMETRY:e})"),
    );
    assert!(pass);
}

#[test]
fn animation_sampling() {
    // 144 units on 144 px, so 1 unit = 1 px and the square stays visible at both ends
    let doc = parse_svg(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-8 -8 144 144"><rect x="0" y="62" width="4" height="4"><animate attributeName="x" from="0" to="128" dur="3.5s"/></rect></svg>"#,
    )
    .unwrap();
    let frames = rasterize_animation(&doc, 144, 8, None);
    let mut worst = 0.0f64;
    let mut positions = Vec::new();
    for (k, f) in frames.iter().enumerate() {
        let img = f.image();
        let (mut mass, mut moment) = (0.0, 0.0);
        for y in 0..img.height {
            for x in 0..img.width {
                let ink = 255.0 - img.pixel(x, y)[0] as f64;
                mass += ink;
                moment += ink * (x as f64 + 0.5);
            }
        }
        // centroid in pixels back to the rect's x: undo the -8 origin and the half width
        let at = moment / mass - 8.0 - 2.0;
        positions.push(format!("{at:.2}"));
        worst = worst.max((at - 128.0 * k as f64 / 7.0).abs());
    }
    let pass = frames.len() == 8 && worst <= CENTROID_TOLERANCE && !frames.iter().any(|f| f.is_penalized());
    report(
        pass,
        "animation sampling",
        &format!("8 frames, x = [{}], max |x - 128k/7| {worst:.3} px (limit {CENTROID_TOLERANCE})", positions.join(", ")),
    );
    assert!(pass);
}

#[test]
fn mcq_scorer() {
    let dir = tempfile::tempdir().unwrap();
    let answers = ["A", "B", "C", "D"];
    let correct = ["A.", "The answer is B.", "C", "D. The shape is a star."];
    let wrong = ["B.", "Answer: no idea", "", "The answer is A."];
    let items: Vec<Value> = answers
        .iter()
        .enumerate()
        .map(|(i, a)| json!({"id": format!("q{i}"), "task": "mcq_understanding", "domain": "icon", "prompt": "Which option?", "reference": a}))
        .collect();
    let mut got = Vec::new();
    for corrupted in 0..=4 {
        let preds: Vec<Value> =
            (0..4).map(|i| json!({"id": format!("q{i}"), "output": if i < corrupted { wrong[i] } else { correct[i] }})).collect();
        let (table, _, _) = bench_run(dir.path(), "mcq", &items, &preds, &format!("r{corrupted}"));
        got.push(table["rows"][0]["metrics"]["accuracy"].as_f64().unwrap());
    }
    let pass = got == [100.0, 75.0, 50.0, 25.0, 0.0];
    report(pass, "mcq scorer", &format!("accuracy with 0..4 corrupted answers: {got:?} (required [100, 75, 50, 25, 0])"));
    assert!(pass);
}

#[test]
fn bench_run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let docs: Vec<Document> = corpus()[100..112].iter().map(|f| parse_svg(&f.canonical).unwrap()).collect();
    let pairs = synthesize_pairs(&docs, 1, 9);
    let domains = ["icon", "illustration", "chemistry", "animation"];
    let items: Vec<Value> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| json!({"id": p.id, "task": "edit", "domain": domains[i % 4], "prompt": p.instruction, "reference": p.record().edited_svg}))
        .collect();
    let preds: Vec<Value> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| json!({"id": p.id, "output": if i % 3 == 0 { "<svg".to_string() } else { p.record().original_svg }}))
        .collect();
    let (_, _, first) = bench_run(dir.path(), "edit", &items, &preds, "a");
    let (_, _, second) = bench_run(dir.path(), "edit", &items, &preds, "b");
    let pass = first == second && !first.is_empty();
    report(pass, "end-to-end determinism", &format!("two runs, aggregate.json {} bytes, byte-identical: {}", first.len(), first == second));
    assert!(pass);
}
