use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use snacs_core::conllulex::LabelDimension;
use snacs_core::stats::Estimator;
use snacs_core::tagger::TargetMode;

#[derive(Debug, Parser)]
#[command(
    name = "snacs",
    version,
    about = "Corpus statistics, agreement and tagging for SNACS-annotated CoNLL-U-Lex corpora",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Label inventory (TOML); the bundled inventory is used when absent.
    #[arg(long, global = true, env = "SNACS_INVENTORY")]
    pub inventory: Option<PathBuf>,

    /// Output style: aligned text tables, or one JSON document per table.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Drop malformed token lines instead of rejecting the corpus.
    #[arg(long, global = true)]
    pub lenient: bool,

    /// Log progress (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a corpus against the format and the label inventory.
    Validate {
        #[arg(required = true)]
        corpus: Vec<PathBuf>,
    },
    /// Corpus summary and target lemma shares.
    Stats {
        corpus: PathBuf,
        /// Show at most this many lemmas per class.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Per-lemma label entropy.
    Entropy {
        corpus: PathBuf,
        #[arg(long, default_value_t = 20)]
        min_n: usize,
        #[arg(long, default_value = "scene", value_parser = parse_dimension)]
        dimension: LabelDimension,
        #[arg(long, default_value = "chao-shen", value_parser = parse_estimator)]
        estimator: Estimator,
        /// Leave out targets with special labels.
        #[arg(long)]
        exclude_specials: bool,
    },
    /// Inter-annotator agreement between two versions of a corpus.
    Agree {
        a: PathBuf,
        b: PathBuf,
        /// Minimum pairs for a lemma to appear in the per-lemma table.
        #[arg(long, default_value_t = 20)]
        min_n: usize,
    },
    /// Write BIO tags, one token (or subword) per line.
    Bio {
        corpus: PathBuf,
        #[arg(long, default_value = "construal", value_parser = parse_dimension)]
        dimension: LabelDimension,
        /// Project tags onto subwords.
        #[arg(long, value_enum, default_value_t = Subwords::None)]
        subwords: Subwords,
    },
    /// Seeded train/dev/test split by sentence.
    Split {
        corpus: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
        /// Write train/dev/test .conllulex files here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Most-frequent-label baseline.
    TrainBaseline {
        train: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Linear-chain CRF.
    TrainCrf {
        train: PathBuf,
        #[arg(long)]
        dev: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "scene", value_parser = parse_dimension)]
        dimension: LabelDimension,
        #[command(flatten)]
        crf: CrfArgs,
    },
    /// Tag a corpus with a saved model.
    Tag {
        #[arg(short, long)]
        model: PathBuf,
        corpus: PathBuf,
        /// Label dimension for baseline models; CRF models use their own.
        #[arg(long, default_value = "scene", value_parser = parse_dimension)]
        dimension: LabelDimension,
        #[arg(long, default_value = "unknown", value_parser = parse_target_mode)]
        targets: TargetMode,
    },
    /// Score predicted tags against a gold corpus.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        /// Tagged file as written by `tag`.
        #[arg(long)]
        pred: PathBuf,
        #[arg(long, default_value = "scene", value_parser = parse_dimension)]
        dimension: LabelDimension,
    },
    /// Summary, entropy table and baseline scores in one run.
    Repro {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random splits; split i uses seed + i.
        #[arg(long, default_value_t = 10)]
        splits: usize,
        #[arg(long, default_value_t = 20)]
        min_n: usize,
        /// Also train a CRF on the first split.
        #[arg(long)]
        crf: bool,
        #[command(flatten)]
        crf_args: CrfArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subwords {
    None,
    Bigram,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Train, dev and test fractions.
    #[arg(long, default_value = "0.8,0.1,0.1", value_parser = parse_ratios)]
    pub ratios: [f64; 3],
}

#[derive(Debug, Clone, Args)]
pub struct CrfArgs {
    #[arg(long, default_value_t = 0.001)]
    pub lr: f64,
    #[arg(long, default_value_t = 30)]
    pub epochs: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub l2: f64,
    #[arg(long, default_value_t = 16)]
    pub batch_size: usize,
    #[arg(long = "crf-seed", default_value_t = 42)]
    pub crf_seed: u64,
    #[arg(long, default_value_t = 1)]
    pub min_feature_count: usize,
}

fn parse_dimension(s: &str) -> Result<LabelDimension, String> {
    s.parse()
}

fn parse_estimator(s: &str) -> Result<Estimator, String> {
    s.parse()
}

fn parse_target_mode(s: &str) -> Result<TargetMode, String> {
    s.parse()
}

fn parse_ratios(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| "expected three comma-separated fractions".to_owned())
}
