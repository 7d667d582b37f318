//! `acromine`: train, run and evaluate the compression-based acronym
//! extractor and its heuristic baselines.
//!
//! Settings come from flags, then from a `key = value` file given by
//! `--config` or `ACROMINE_CONFIG`, then from built-in defaults.

mod config;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acromine::baselines::{afp_extract, simple_extract, tla_extract, tla_train, AfpConfig, Stopwords};
use acromine::corpus::train_models;
use acromine::eval::{default_grid, emit_report, predictions_at, report_point, score_documents, sweep_scored};
use acromine::extractor::dedupe;
use acromine::models::persist::{load_models, save_models};
use acromine::record::parse_predictions;
use acromine::{
    extract_document, load_corpus, split_corpus, Corpus, CorpusSplit, EvalReport, ExtractorConfig, Gold, Prediction,
    ScoringMode, TrainedModels,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{pick, Config};

const DEFAULT_SEED: u64 = 42;
const DEFAULT_CORPUS: &str = "data/synthetic";
const DEFAULT_MODEL: &str = "acromine.model";

#[derive(Parser, Debug)]
#[command(name = "acromine", version, about = "Compression-based acronym extraction")]
#[command(after_help = "Precedence: command-line flags, then the config file (--config or $ACROMINE_CONFIG), \
                        then defaults. Config keys are the long flag names, one `key = value` per line.")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Settings file of `key = value` lines
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory of `.txt` documents with `.ann` sidecars [default: data/synthetic]
    #[arg(long, global = true, value_name = "DIR")]
    corpus: Option<PathBuf>,
    /// Model file [default: acromine.model]
    #[arg(long, global = true, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Train/test split seed [default: 42]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads [default: available processors]
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train component models (and prime the text model) on the training split
    Train {
        /// Leave the text model empty instead of priming it on training text
        #[arg(long)]
        no_prime: bool,
    },
    /// Print extraction records for each input file
    Extract {
        #[command(flatten)]
        scoring: Scoring,
        /// Keep only the first occurrence of each acronym per file
        #[arg(long)]
        dedupe: bool,
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
    },
    /// Score the test split at one threshold, or score a prediction file
    Evaluate {
        #[command(flatten)]
        scoring: Scoring,
        /// Prediction records to score instead of running the extractor
        #[arg(long, value_name = "FILE")]
        predictions: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Recall and precision on the test split across a threshold grid
    Sweep {
        #[arg(long, value_parser = parse_mode)]
        mode: Option<ScoringMode>,
        /// Comma-separated thresholds [default: 30 log-spaced values in 0.02..=1]
        #[arg(long, value_name = "LIST")]
        thresholds: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a heuristic extractor on the test split and score it
    Baseline {
        #[arg(long, value_enum)]
        method: Method,
        /// Stopword list, one word per line [default: built-in list]
        #[arg(long, value_name = "FILE")]
        stopwords: Option<PathBuf>,
        /// Also write the baseline's prediction records here
        #[arg(long, value_name = "FILE")]
        predictions_out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct Scoring {
    /// Acceptance threshold [default: 0.2]
    #[arg(long)]
    t: Option<f64>,
    /// ratio or difference [default: ratio]
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ScoringMode>,
    /// Shortest acronym to report [default: 2]
    #[arg(long)]
    min_length: Option<usize>,
}

#[derive(Args, Debug)]
struct Output {
    /// CSV destination; a text table is written beside it as `<FILE>.txt`.
    /// Without this flag the CSV goes to standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Afp,
    Tla,
    Simple,
}

fn parse_mode(s: &str) -> Result<ScoringMode, String> {
    s.parse()
}

struct Session {
    config: Config,
    corpus: PathBuf,
    model: PathBuf,
    seed: u64,
}

impl Session {
    fn new(common: &Common) -> Result<Self> {
        let config = Config::load(common.config.as_deref())?;
        let corpus = common.corpus.clone().or_else(|| config.path("corpus")).unwrap_or_else(|| DEFAULT_CORPUS.into());
        let model = common.model.clone().or_else(|| config.path("model")).unwrap_or_else(|| DEFAULT_MODEL.into());
        let seed = pick(common.seed, &config, "seed", DEFAULT_SEED)?;
        let jobs = pick(common.jobs, &config, "jobs", 0usize)?;
        if jobs > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("cannot start worker threads")?;
        }
        Ok(Session { config, corpus, model, seed })
    }

    fn load_split(&self) -> Result<(Corpus, CorpusSplit)> {
        let corpus = load_corpus(&self.corpus)?;
        let split = split_corpus(&corpus, self.seed)?;
        Ok((corpus, split))
    }

    fn load_model(&self) -> Result<TrainedModels> {
        let bytes = fs::read(&self.model).with_context(|| format!("cannot read model {}", self.model.display()))?;
        load_models(&bytes).with_context(|| format!("in {}", self.model.display()))
    }

    fn extractor_config(&self, s: &Scoring) -> Result<ExtractorConfig> {
        let defaults = ExtractorConfig::default();
        let config = ExtractorConfig {
            threshold: pick(s.t, &self.config, "t", defaults.threshold)?,
            mode: pick(s.mode, &self.config, "mode", defaults.mode)?,
            min_length: pick(s.min_length, &self.config, "min-length", defaults.min_length)?,
        };
        config.validate().map_err(anyhow::Error::msg)?;
        Ok(config)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("acromine: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Session::new(&cli.common)?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Train { no_prime } => train(&ctx, !no_prime, &mut out)?,
        Command::Extract { scoring, dedupe, files } => extract(&ctx, &scoring, dedupe, &files, &mut out)?,
        Command::Evaluate { scoring, predictions, output } => {
            let (corpus, split) = ctx.load_split()?;
            let gold = Gold::from_corpus(&corpus, &split.test);
            let report = match predictions {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
                    let predictions = parse_predictions(&text).with_context(|| format!("in {}", path.display()))?;
                    report_point(&predictions, &gold, None)?
                }
                None => {
                    let config = ctx.extractor_config(&scoring)?;
                    let models = ctx.load_model()?;
                    let scored = score_documents(&corpus, &split.test, &models, config.mode)?;
                    let predictions = predictions_at(&scored, config.threshold, config.min_length);
                    report_point(&predictions, &gold, Some(config.threshold))?
                }
            };
            write_report(&report, output.out.as_deref(), &mut out)?;
        }
        Command::Sweep { mode, thresholds, output } => {
            let mode = pick(mode, &ctx.config, "mode", ScoringMode::Ratio)?;
            let thresholds = match thresholds.or(ctx.config.get("thresholds")?) {
                Some(list) => parse_thresholds(&list)?,
                None => default_grid(),
            };
            let (corpus, split) = ctx.load_split()?;
            let models = ctx.load_model()?;
            let scored = score_documents(&corpus, &split.test, &models, mode)?;
            let report = sweep_scored(&scored, &Gold::from_corpus(&corpus, &split.test), &thresholds)?;
            write_report(&report, output.out.as_deref(), &mut out)?;
        }
        Command::Baseline { method, stopwords, predictions_out, output } => {
            let stopwords = match stopwords.or_else(|| ctx.config.path("stopwords")) {
                Some(path) => Stopwords::load(&path)?,
                None => Stopwords::default(),
            };
            let (corpus, split) = ctx.load_split()?;
            let predictions = run_baseline(method, &corpus, &split, stopwords)?;
            if let Some(path) = predictions_out {
                write_file(&path, records(&predictions))?;
            }
            let report = report_point(&predictions, &Gold::from_corpus(&corpus, &split.test), None)?;
            write_report(&report, output.out.as_deref(), &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn train(ctx: &Session, prime: bool, out: &mut impl Write) -> Result<()> {
    let (corpus, split) = ctx.load_split()?;
    let (models, gold) = train_models(&corpus, &split, prime)?;
    write_file(&ctx.model, save_models(&models))?;
    for a in &gold.skipped {
        eprintln!("skipped unencodable {} at {}:{}", a.acronym, a.doc_id, a.acronym_offset);
    }
    writeln!(out, "train_documents={}", split.train.len())?;
    writeln!(out, "test_documents={}", split.test.len())?;
    writeln!(out, "annotations_used={}", gold.codes.len())?;
    writeln!(out, "annotations_skipped={}", gold.skipped.len())?;
    Ok(())
}

fn extract(ctx: &Session, scoring: &Scoring, dedupe_: bool, files: &[PathBuf], out: &mut impl Write) -> Result<()> {
    let config = ctx.extractor_config(scoring)?;
    let models = ctx.load_model()?;
    for path in files {
        let text = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let mut found = extract_document(&text, &models, &config)?;
        if dedupe_ {
            found = dedupe(found);
        }
        let id = doc_id(path);
        for e in &found {
            writeln!(out, "{}", Prediction::from_extraction(&id, e))?;
        }
    }
    Ok(())
}

fn run_baseline(method: Method, corpus: &Corpus, split: &CorpusSplit, stopwords: Stopwords) -> Result<Vec<Prediction>> {
    let docs: Vec<_> = corpus.select(&split.test).collect();
    let mut predictions = Vec::new();
    match method {
        Method::Afp => {
            let config = AfpConfig { stopwords, ..AfpConfig::default() };
            for d in docs {
                predictions.extend(afp_extract(&d.text, &config).iter().map(|m| Prediction::from_baseline(&d.id, m)));
            }
        }
        Method::Tla => {
            let model = tla_train(corpus, &split.train, &stopwords).context("training the TLA classifier")?;
            for d in docs {
                predictions.extend(
                    tla_extract(&d.text, &model, &stopwords).iter().map(|m| Prediction::from_baseline(&d.id, m)),
                );
            }
        }
        Method::Simple => {
            for d in docs {
                predictions.extend(simple_extract(&d.text).iter().map(|m| Prediction::from_baseline(&d.id, m)));
            }
        }
    }
    Ok(predictions)
}

/// Records are keyed by file stem, matching corpus document ids.
fn doc_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn records(predictions: &[Prediction]) -> String {
    predictions.iter().map(|p| format!("{p}\n")).collect()
}

fn parse_thresholds(list: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let t: f64 = item.parse().with_context(|| format!("bad threshold {item:?}"))?;
        if t.is_nan() || t < 0.0 {
            bail!("thresholds must be non-negative, got {item}");
        }
        out.push(t);
    }
    Ok(out)
}

fn write_report(report: &EvalReport, path: Option<&Path>, out: &mut impl Write) -> Result<()> {
    match path {
        Some(p) => emit_report(report, p)?,
        None => out.write_all(report.to_csv().as_bytes())?,
    }
    Ok(())
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}
