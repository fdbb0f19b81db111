use std::path::Path;

use proptest::prelude::*;
use serde_json::Value;
use svgbench_harness::{
    parse_manifest, run_bench, score_mcq, score_pixels, BenchConfig, Domain, Error, EvalItem, ItemScore, ScoreOptions, Task,
};
use svgbench_render::RasterImage;
use svgbench_tokenizer::{build_vocab, Codec, PieceTokenizer};

const SIZE: u32 = 48;

fn svg(body: &str) -> String {
    format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 128 128">{body}</svg>"#)
}

fn edit_item(id: &str, domain: Domain, reference: &str) -> Value {
    serde_json::json!({"id": id, "task": "edit", "domain": domain, "prompt": "Flip it horizontally.", "reference": reference})
}

fn write_jsonl(path: &Path, lines: &[Value]) {
    let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
    std::fs::write(path, text).unwrap();
}

fn edit_fixture(dir: &Path) -> BenchConfig {
    let a = svg(r##"<rect x="10" y="10" width="50" height="80" fill="#e53935"/>"##);
    let b = svg(r##"<circle cx="64" cy="64" r="30" fill="#1e88e5"/>"##);
    let c = svg(r##"<path d="M10 10L100 20L50 110Z" fill="#43a047"/>"##);
    write_jsonl(
        &dir.join("m.jsonl"),
        &[edit_item("c", Domain::Chemistry, &c), edit_item("a", Domain::Icon, &a), edit_item("b", Domain::Icon, &b)],
    );
    write_jsonl(
        &dir.join("p.jsonl"),
        &[
            serde_json::json!({"id": "a", "output": format!("```svg\n{a}\n```")}),
            serde_json::json!({"id": "b", "output": "<svg><circle"}),
            serde_json::json!({"id": "c", "output": c}),
        ],
    );
    BenchConfig { size: SIZE, ..BenchConfig::new(dir.join("m.jsonl"), dir.join("p.jsonl"), Task::Edit, dir.join("report")) }
}

#[test]
fn run_writes_the_report_layout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = edit_fixture(dir.path());
    let base = PieceTokenizer::synthetic();
    let vocab = build_vocab();
    let summary = run_bench(&cfg, Some(Codec::new(&base, &vocab))).unwrap();

    let rows = &summary.table.rows;
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0].domain, rows[0].items, rows[0].renderable), (Domain::Icon, 2, Some(1)));
    assert_eq!(rows[1].domain, Domain::Chemistry);
    assert_eq!(rows[1].metrics["psnr"], 100.0);
    assert!(rows[0].tokens.unwrap().special < rows[0].tokens.unwrap().base);

    let out = &cfg.out;
    let items: Vec<ItemScore> =
        std::fs::read_to_string(out.join("items.jsonl")).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let ids: Vec<&str> = items.iter().map(|i| i.id.as_str()).collect();
    assert_eq!(ids, ["a", "b", "c"]);
    assert_eq!(items[1].renderable, Some(false));

    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(out.join("frames/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["items"].as_array().unwrap().len(), 3);
    for entry in manifest["items"].as_array().unwrap() {
        for key in ["reference", "prediction"] {
            let paths = entry[key].as_array().unwrap();
            assert_eq!(paths.len(), 1);
            let img = RasterImage::load_png(out.join("frames").join(paths[0].as_str().unwrap())).unwrap();
            assert_eq!((img.width, img.height), (SIZE, SIZE));
        }
    }
    let penalized = RasterImage::load_png(out.join("frames/b/pred_0.png")).unwrap();
    assert_eq!(penalized, RasterImage::black(SIZE, SIZE));
    assert!(out.join("aggregate.txt").is_file());
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = edit_fixture(dir.path());
    run_bench(&cfg, None).unwrap();
    let first = std::fs::read(cfg.out.join("aggregate.json")).unwrap();
    let items = std::fs::read(cfg.out.join("items.jsonl")).unwrap();
    run_bench(&cfg, None).unwrap();
    assert_eq!(first, std::fs::read(cfg.out.join("aggregate.json")).unwrap());
    assert_eq!(items, std::fs::read(cfg.out.join("items.jsonl")).unwrap());
}

#[test]
fn schema_violations_are_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = edit_fixture(dir.path());
    let wrong_task = BenchConfig { task: Task::ImageToSvg, ..cfg.clone() };
    let err = run_bench(&wrong_task, None).unwrap_err();
    assert!(err.is_schema_violation(), "{err}");

    std::fs::write(dir.path().join("p.jsonl"), "{\"id\":\"a\"}\n").unwrap();
    assert!(run_bench(&cfg, None).unwrap_err().is_schema_violation());

    std::fs::write(dir.path().join("m.jsonl"), "").unwrap();
    assert!(matches!(run_bench(&cfg, None), Err(Error::EmptyManifest)));

    let missing = BenchConfig::new(dir.path().join("nope.jsonl"), dir.path().join("p.jsonl"), Task::Edit, dir.path().join("r"));
    let err = run_bench(&missing, None).unwrap_err();
    assert!(matches!(err, Error::Io { .. }) && !err.is_schema_violation());
}

#[test]
fn animation_frames_are_exported() {
    let dir = tempfile::tempdir().unwrap();
    let anim = svg(r#"<rect x="0" y="50" width="20" height="20"><animate attributeName="x" from="0" to="108" dur="1s"/></rect>"#);
    write_jsonl(
        &dir.path().join("m.jsonl"),
        &[serde_json::json!({"id": "v", "task": "video_to_sani", "domain": "animation", "prompt": "", "reference": anim})],
    );
    write_jsonl(&dir.path().join("p.jsonl"), &[serde_json::json!({"id": "v", "output": anim})]);
    let cfg = BenchConfig {
        size: 32,
        n_frames: 4,
        ..BenchConfig::new(dir.path().join("m.jsonl"), dir.path().join("p.jsonl"), Task::VideoToSani, dir.path().join("out"))
    };
    let summary = run_bench(&cfg, None).unwrap();
    assert_eq!(summary.table.rows[0].metrics["psnr"], 100.0);
    for k in 0..4 {
        assert!(cfg.out.join(format!("frames/v/ref_{k}.png")).is_file());
        assert!(cfg.out.join(format!("frames/v/pred_{k}.png")).is_file());
    }
    let first = RasterImage::load_png(cfg.out.join("frames/v/ref_0.png")).unwrap();
    let last = RasterImage::load_png(cfg.out.join("frames/v/ref_3.png")).unwrap();
    assert_ne!(first, last);
}

fn mcq_items(answers: &[u8], outputs: &[u8]) -> Vec<(EvalItem, String)> {
    let text: String = answers
        .iter()
        .enumerate()
        .map(|(i, a)| {
            format!(
                "{{\"id\":\"q{i:03}\",\"task\":\"mcq\",\"domain\":\"icon\",\"prompt\":\"?\",\"reference\":\"{}\"}}\n",
                (b'A' + a) as char
            )
        })
        .collect();
    parse_manifest(&text).unwrap().into_iter().zip(outputs).map(|(it, o)| (it, format!("{}.", (b'A' + o) as char))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mcq_accuracy_is_bounded_and_order_free(pairs in prop::collection::vec((0..4u8, 0..5u8), 1..40), rot in 0..40usize) {
        let (answers, outputs): (Vec<u8>, Vec<u8>) = pairs.into_iter().unzip();
        let items = mcq_items(&answers, &outputs);
        let opts = ScoreOptions::default();
        let report = score_mcq(&items, &opts).unwrap();
        let acc = report.aggregate["accuracy"];
        prop_assert!((0.0..=100.0).contains(&acc));
        let correct = answers.iter().zip(&outputs).filter(|(a, o)| a == o).count();
        prop_assert_eq!(acc, 100.0 * correct as f64 / answers.len() as f64);
        let mut shuffled = items.clone();
        shuffled.rotate_left(rot % items.len());
        shuffled.reverse();
        prop_assert_eq!(score_mcq(&shuffled, &opts).unwrap(), report);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn pixel_reports_keep_every_item_and_ignore_order(specs in prop::collection::vec((0..100i32, 0..100i32, any::<bool>()), 1..6), rot in 0..6usize) {
        let items: Vec<(EvalItem, String)> = specs
            .iter()
            .enumerate()
            .map(|(i, (x, y, broken))| {
                let reference = svg(&format!(r##"<rect x="{x}" y="{y}" width="28" height="28" fill="#8e24aa"/>"##));
                let item = EvalItem {
                    id: format!("i{i}"),
                    task: Task::Edit,
                    domain: Domain::Icon,
                    prompt: String::new(),
                    reference: reference.clone(),
                    media_paths: None,
                };
                let output = if *broken { reference.replace("</svg>", "") } else { svg(&format!(r#"<circle cx="{y}" cy="{x}" r="12"/>"#)) };
                (item, output)
            })
            .collect();
        let opts = ScoreOptions { size: 32, ..ScoreOptions::default() };
        let report = score_pixels(&items, &opts).unwrap();
        prop_assert_eq!(report.items.len(), items.len());
        for key in ["ssim", "psnr"] {
            let mean = report.items.iter().map(|i| i.scores[key]).sum::<f64>() / items.len() as f64;
            prop_assert_eq!(report.aggregate[key], mean);
        }
        let mut shuffled = items.clone();
        shuffled.rotate_left(rot % items.len());
        prop_assert_eq!(score_pixels(&shuffled, &opts).unwrap(), report);
    }
}
