//! Recall and precision against gold annotations, and threshold sweeps.
//!
//! A prediction is correct when it names the gold acronym occurrence (same
//! document and byte offset) and the same definition words (same first and
//! last word offsets). Every occurrence counts separately.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::{gold_code, Corpus, GoldAnnotation};
use crate::extractor::{score_document, ScoredCandidate, ScoringMode};
use crate::models::{ModelError, TrainedModels};
use crate::record::Prediction;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("prediction for document {0:?}, which is not in the gold set")]
    DocumentMismatch(String),
    #[error("cannot write {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthFilter {
    MinTwo,
    MinThree,
}

impl LengthFilter {
    pub const BOTH: [LengthFilter; 2] = [LengthFilter::MinTwo, LengthFilter::MinThree];

    pub fn min_len(self) -> usize {
        match self {
            LengthFilter::MinTwo => 2,
            LengthFilter::MinThree => 3,
        }
    }

    pub fn keeps(self, acronym: &str) -> bool {
        acronym.len() >= self.min_len()
    }
}

impl fmt::Display for LengthFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "min{}", self.min_len())
    }
}

/// Gold annotations for a fixed set of documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gold {
    pub documents: BTreeSet<String>,
    pub annotations: Vec<GoldAnnotation>,
}

impl Gold {
    pub fn from_corpus(corpus: &Corpus, ids: &[String]) -> Self {
        let docs: Vec<_> = corpus.select(ids).collect();
        Gold {
            documents: docs.iter().map(|d| d.id.clone()).collect(),
            annotations: docs.iter().flat_map(|d| d.annotations.iter().cloned()).collect(),
        }
    }

    /// Drops annotations that no legal code reproduces.
    pub fn encodable_only(&self, corpus: &Corpus) -> Gold {
        let mut streams = HashMap::new();
        let annotations = self
            .annotations
            .iter()
            .filter(|a| {
                let stream =
                    streams.entry(a.doc_id.clone()).or_insert_with(|| corpus.get(&a.doc_id).map(|d| d.tokens()));
                stream.as_ref().is_some_and(|s| gold_code(s, a).is_some())
            })
            .cloned()
            .collect();
        Gold { documents: self.documents.clone(), annotations }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Score {
    pub recall: f64,
    pub precision: f64,
    pub counts: Counts,
}

type Key<'a> = (&'a str, usize, (usize, usize));

/// Recall is `tp / gold`, precision `tp / predictions`; precision is 1 when
/// nothing was predicted, and recall is 1 when there is no gold.
pub fn score(predictions: &[Prediction], gold: &Gold, filter: LengthFilter) -> Result<Score, EvalError> {
    if let Some(p) = predictions.iter().find(|p| !gold.documents.contains(&p.doc_id)) {
        return Err(EvalError::DocumentMismatch(p.doc_id.clone()));
    }
    let mut remaining: HashMap<Key, usize> = HashMap::new();
    let mut gold_count = 0;
    for a in gold.annotations.iter().filter(|a| filter.keeps(&a.acronym)) {
        *remaining.entry((&a.doc_id, a.acronym_offset, a.definition_span)).or_insert(0) += 1;
        gold_count += 1;
    }
    let (mut tp, mut predicted) = (0, 0);
    for p in predictions.iter().filter(|p| filter.keeps(&p.acronym)) {
        predicted += 1;
        if let Some(n) = remaining.get_mut(&(p.doc_id.as_str(), p.offset, p.definition_span)) {
            if *n > 0 {
                *n -= 1;
                tp += 1;
            }
        }
    }
    let ratio = |num: usize, den: usize| if den == 0 { 1.0 } else { num as f64 / den as f64 };
    Ok(Score {
        recall: ratio(tp, gold_count),
        precision: ratio(tp, predicted),
        counts: Counts { tp, fp: predicted - tp, fn_: gold_count - tp },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    /// NaN for methods without a threshold; written as an empty field.
    pub t: f64,
    pub filter: LengthFilter,
    pub score: Score,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    /// Both filters for each threshold, in sweep order.
    pub points: Vec<EvalPoint>,
}

pub const CSV_HEADER: &str = "t,filter,recall,precision,tp,fp,fn";

impl EvalReport {
    pub fn for_filter(&self, filter: LengthFilter) -> impl Iterator<Item = &EvalPoint> {
        self.points.iter().filter(move |p| p.filter == filter)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for p in &self.points {
            let c = p.score.counts;
            writeln!(
                out,
                "{},{},{:.6},{:.6},{},{},{}",
                format_t(p.t, 0),
                p.filter,
                p.score.recall,
                p.score.precision,
                c.tp,
                c.fp,
                c.fn_
            )
            .unwrap();
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{:>10}  {:>6}  {:>8}  {:>9}  {:>5}  {:>5}  {:>5}\n",
            "t", "filter", "recall", "precision", "tp", "fp", "fn"
        );
        for p in &self.points {
            let c = p.score.counts;
            writeln!(
                out,
                "{:>10}  {:>6}  {:>8.4}  {:>9.4}  {:>5}  {:>5}  {:>5}",
                format_t(p.t, 10),
                p.filter,
                p.score.recall,
                p.score.precision,
                c.tp,
                c.fp,
                c.fn_
            )
            .unwrap();
        }
        out
    }
}

fn format_t(t: f64, width: usize) -> String {
    if t.is_nan() {
        format!("{:>width$}", if width > 0 { "-" } else { "" })
    } else {
        format!("{t:>width$.6}")
    }
}

/// Both filters for one fixed set of predictions.
pub fn report_point(predictions: &[Prediction], gold: &Gold, t: Option<f64>) -> Result<EvalReport, EvalError> {
    let t = t.unwrap_or(f64::NAN);
    let points = LengthFilter::BOTH
        .into_iter()
        .map(|filter| Ok(EvalPoint { t, filter, score: score(predictions, gold, filter)? }))
        .collect::<Result<_, EvalError>>()?;
    Ok(EvalReport { points })
}

/// Writes the CSV to `path` and the text table next to it with a `.txt`
/// suffix appended.
pub fn emit_report(report: &EvalReport, path: &Path) -> Result<(), EvalError> {
    let write =
        |p: &Path, text: String| fs::write(p, text).map_err(|source| EvalError::Io { path: p.to_owned(), source });
    write(path, report.to_csv())?;
    let mut summary = path.as_os_str().to_owned();
    summary.push(".txt");
    write(Path::new(&summary), report.summary())
}

/// Thirty thresholds spaced evenly in log scale from 0.02 to 1.
pub fn default_grid() -> Vec<f64> {
    const N: usize = 30;
    let (lo, hi) = (0.02f64, 1.0f64);
    let mut grid: Vec<f64> =
        (0..N).map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (N - 1) as f64).exp()).collect();
    grid[0] = lo;
    grid[N - 1] = hi;
    grid
}

/// Scored candidates for each document, computed in parallel and returned
/// in the order given.
pub fn score_documents(
    corpus: &Corpus,
    ids: &[String],
    models: &TrainedModels,
    mode: ScoringMode,
) -> Result<Vec<(String, Vec<ScoredCandidate>)>, EvalError> {
    let docs: Vec<_> = corpus.select(ids).collect();
    docs.par_iter().map(|d| Ok((d.id.clone(), score_document(&d.text, models, mode)?))).collect()
}

/// Predictions accepted at threshold `t`, in document order.
pub fn predictions_at(scored: &[(String, Vec<ScoredCandidate>)], t: f64, min_length: usize) -> Vec<Prediction> {
    let mut out = Vec::new();
    for (doc_id, candidates) in scored {
        for c in candidates.iter().filter(|c| c.acronym().len() >= min_length && c.accepted_at(t)) {
            let (best, definition) = (c.best.as_ref().unwrap(), c.definition.as_ref().unwrap());
            out.push(Prediction {
                doc_id: doc_id.clone(),
                offset: c.offset(),
                acronym: c.acronym().to_owned(),
                code: best.code.clone(),
                definition_span: definition.offsets(),
                definition_text: definition.text.clone(),
                score: c.score.unwrap(),
            });
        }
    }
    out
}

/// Re-thresholds cached scores; one point per threshold and filter.
pub fn sweep_scored(
    scored: &[(String, Vec<ScoredCandidate>)],
    gold: &Gold,
    thresholds: &[f64],
) -> Result<EvalReport, EvalError> {
    let mut points = Vec::with_capacity(thresholds.len() * 2);
    for &t in thresholds {
        let predictions = predictions_at(scored, t, LengthFilter::MinTwo.min_len());
        for filter in LengthFilter::BOTH {
            points.push(EvalPoint { t, filter, score: score(&predictions, gold, filter)? });
        }
    }
    Ok(EvalReport { points })
}

/// Scores the test documents once, then sweeps.
pub fn sweep(
    corpus: &Corpus,
    test_ids: &[String],
    models: &TrainedModels,
    thresholds: &[f64],
    mode: ScoringMode,
) -> Result<EvalReport, EvalError> {
    let scored = score_documents(corpus, test_ids, models, mode)?;
    sweep_scored(&scored, &Gold::from_corpus(corpus, test_ids), thresholds)
}
