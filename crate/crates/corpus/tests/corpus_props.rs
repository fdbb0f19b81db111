use svgbench_core::{parse_svg, pipeline, serialize_svg, NormalizeConfig};
use svgbench_corpus::{generate_corpus, generate_file, read_svg_dir, write_corpus, CorpusConfig};
use svgbench_render::{is_animated, validate_renderable};

fn small() -> CorpusConfig {
    CorpusConfig { count: 120, seed: 11, animated_fraction: 0.25 }
}

#[test]
fn generation_is_deterministic_and_indexable() {
    let a = generate_corpus(&small()).unwrap();
    let b = generate_corpus(&small()).unwrap();
    assert_eq!(a, b);
    assert_eq!(generate_file(37, 11, 0.25).unwrap(), a[37]);
    let other = generate_corpus(&CorpusConfig { seed: 12, ..small() }).unwrap();
    assert_ne!(a[0].raw, other[0].raw);
}

#[test]
fn canonical_files_are_normalized_and_renderable() {
    for f in generate_corpus(&small()).unwrap() {
        let doc = parse_svg(&f.canonical).unwrap();
        assert_eq!(doc.root.attr_text("viewBox").as_deref(), Some("0 0 128 128"), "{}", f.name);
        validate_renderable(&doc).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        let again = serialize_svg(&pipeline(&doc, &NormalizeConfig::default()).unwrap()) + "\n";
        assert_eq!(again, f.canonical, "{} is not a fixed point", f.name);
        assert_eq!(is_animated(&doc), f.animated, "{}", f.name);
    }
}

#[test]
fn animated_share_follows_config() {
    let files = generate_corpus(&CorpusConfig { count: 400, seed: 3, animated_fraction: 0.25 }).unwrap();
    let share = files.iter().filter(|f| f.animated).count() as f64 / files.len() as f64;
    assert!((0.18..0.32).contains(&share), "{share}");
}

#[test]
fn written_corpus_reads_back_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let files = generate_corpus(&CorpusConfig { count: 5, ..small() }).unwrap();
    write_corpus(dir.path(), &files).unwrap();
    let back = read_svg_dir(&dir.path().join("canonical")).unwrap();
    let names: Vec<_> = back.iter().map(|(n, _)| n.clone()).collect();
    assert_eq!(names, ["icon_00000", "icon_00001", "icon_00002", "icon_00003", "icon_00004"]);
    assert_eq!(back[2].1, files[2].canonical);
}
