use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Debug, Parser)]
#[command(name = "svgbench", version, about = "SVG canonicalization, tokenization, rendering, edit synthesis and benchmark scoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rescale onto the canonical canvas, simplify and quantize.
    Normalize(NormalizeArgs),
    /// Encode a file with the SVG special vocabulary.
    Tokenize(TokenizeArgs),
    /// Initialize special-token embeddings from a base embedding matrix.
    InitEmbed(InitEmbedArgs),
    /// Rasterize a document, or sample frames of an animation.
    Render(RenderArgs),
    /// Compare two PNG images.
    Metric(MetricArgs),
    /// Synthesize (original, instruction, edited) pairs from a corpus.
    EditSynth(EditSynthArgs),
    /// Generate a synthetic icon corpus.
    GenCorpus(GenCorpusArgs),
    /// Benchmark scoring.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    /// An SVG file or a directory of SVG files.
    pub input: PathBuf,
    /// Output file, or output directory when the input is a directory.
    /// A single file goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Side of the square target canvas in user units.
    #[arg(long, default_value_t = 128.0)]
    pub canvas: f64,
    /// Decimal places kept in numeric literals.
    #[arg(long, default_value_t = 2)]
    pub precision: u32,
    #[arg(long)]
    pub no_simplify: bool,
}

#[derive(Debug, Args)]
pub struct TokenizerArgs {
    /// Base vocabulary as a `{"piece": id}` JSON object; defaults to the
    /// built-in synthetic vocabulary.
    #[arg(long)]
    pub base_vocab: Option<PathBuf>,
    /// Special vocabulary manifest; defaults to the built-in one.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TokenizeArgs {
    /// An SVG file, or with `--stats` a directory of SVG files.
    pub input: PathBuf,
    /// Print token counts with and without the special vocabulary.
    #[arg(long)]
    pub stats: bool,
    /// Print token ids separated by spaces (the default).
    #[arg(long, conflicts_with = "pretty")]
    pub ids: bool,
    /// Print one token per line as `id<TAB>kind<TAB>text`.
    #[arg(long)]
    pub pretty: bool,
    #[command(flatten)]
    pub tokenizer: TokenizerArgs,
}

#[derive(Debug, Args)]
pub struct InitEmbedArgs {
    /// Base embedding matrix: little-endian f32, one row per base id.
    #[arg(long)]
    pub base_emb: PathBuf,
    /// Output matrix with one row per special token, in id order. An index
    /// is written beside it with a `.json` extension.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub tokenizer: TokenizerArgs,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = svgbench_render::DEFAULT_SIZE)]
    pub size: u32,
    /// Output PNG for a still render.
    #[arg(long, required_unless_present = "frames")]
    pub out: Option<PathBuf>,
    /// Number of animation frames to sample over `[0, duration]`.
    #[arg(long, requires = "out_dir")]
    pub frames: Option<usize>,
    /// Sampled duration in seconds; defaults to the document's own.
    #[arg(long, requires = "frames")]
    pub duration: Option<f64>,
    /// Directory for `frame_<k>.png`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    #[arg(long = "ref")]
    pub reference: PathBuf,
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub ssim: bool,
    #[arg(long)]
    pub psnr: bool,
}

#[derive(Debug, Args)]
pub struct EditSynthArgs {
    /// Directory of canonical SVG files.
    pub corpus: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub ops_per_doc: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenCorpusArgs {
    /// Receives `raw/` and `canonical/` subdirectories.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.15)]
    pub animated_fraction: f64,
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Score a prediction file against a task manifest.
    Run(BenchRunArgs),
}

#[derive(Debug, Args)]
pub struct BenchRunArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub pred: PathBuf,
    /// mcq, description, edit, text_to_svg, image_to_svg, text_to_sani or
    /// video_to_sani.
    #[arg(long)]
    pub task: svgbench_harness::Task,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = svgbench_harness::score::DEFAULT_FRAMES)]
    pub frames: usize,
    #[arg(long, default_value_t = svgbench_render::DEFAULT_SIZE)]
    pub size: u32,
    #[command(flatten)]
    pub tokenizer: TokenizerArgs,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Normalize(a) => commands::normalize(&a),
        Command::Tokenize(a) => commands::tokenize(&a),
        Command::InitEmbed(a) => commands::init_embed(&a),
        Command::Render(a) => commands::render(&a),
        Command::Metric(a) => commands::metric(&a),
        Command::EditSynth(a) => commands::edit_synth(&a),
        Command::GenCorpus(a) => commands::gen_corpus(&a),
        Command::Bench(BenchCommand::Run(a)) => commands::bench_run(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let schema = e.downcast_ref::<svgbench_harness::Error>().is_some_and(svgbench_harness::Error::is_schema_violation);
            ExitCode::from(if schema { 2 } else { 1 })
        }
    }
}
