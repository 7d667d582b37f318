//! Annotated corpora: plain-text documents with stand-off `.ann` sidecars.
//!
//! An `.ann` file starts with the line `# ann v1` and holds one record per
//! line, tab separated:
//!
//! ```text
//! acronym-offset  acronym  first-word-offset  last-word-offset  definition
//! ```
//!
//! Offsets are byte offsets into the document, and each must be the start of
//! a token. The definition is the span's words joined by single spaces.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codec::{enumerate_codes, realize, AcronymCode};
use crate::models::{train_component_models, ModelError, PpmModel, TrainedModels};
use crate::text::{tokenize, CandidateSite, TokenStream};

pub const ANN_HEADER: &str = "# ann v1";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}:{line}: {reason}")]
    MalformedAnnotation { path: PathBuf, line: usize, reason: String },
    #[error("missing document: {0}")]
    MissingDocument(String),
    #[error("need at least 3 documents to split, found {0}")]
    TooFewDocuments(usize),
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.to_owned(), source }
}

/// A hand-marked acronym and its definition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoldAnnotation {
    pub doc_id: String,
    pub acronym_offset: usize,
    pub acronym: String,
    /// Byte offsets of the first and last definition words.
    pub definition_span: (usize, usize),
    pub definition_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: Vec<u8>,
    pub annotations: Vec<GoldAnnotation>,
}

impl Document {
    pub fn tokens(&self) -> TokenStream {
        tokenize(&self.text)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    /// Sorted by id.
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn new(mut documents: Vec<Document>) -> Self {
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        Corpus { documents }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.documents.binary_search_by(|d| d.id.as_str().cmp(id)).ok().map(|i| &self.documents[i])
    }

    pub fn ids(&self) -> Vec<String> {
        self.documents.iter().map(|d| d.id.clone()).collect()
    }

    pub fn annotations(&self) -> impl Iterator<Item = &GoldAnnotation> {
        self.documents.iter().flat_map(|d| &d.annotations)
    }

    /// Documents named by `ids`, in corpus order.
    pub fn select<'a>(&'a self, ids: &'a [String]) -> impl Iterator<Item = &'a Document> {
        self.documents.iter().filter(move |d| ids.contains(&d.id))
    }

    /// Annotations that no legal code can reproduce.
    pub fn unencodable(&self) -> Vec<&GoldAnnotation> {
        self.documents
            .iter()
            .flat_map(|d| {
                let stream = d.tokens();
                d.annotations.iter().filter(move |a| gold_code(&stream, a).is_none())
            })
            .collect()
    }
}

/// Canonical `.ann` text: header, then records by acronym offset.
pub fn serialize_annotations(annotations: &[GoldAnnotation]) -> String {
    let mut sorted: Vec<&GoldAnnotation> = annotations.iter().collect();
    sorted.sort();
    let mut out = format!("{ANN_HEADER}\n");
    for a in sorted {
        let (first, last) = a.definition_span;
        writeln!(out, "{}\t{}\t{}\t{}\t{}", a.acronym_offset, a.acronym, first, last, a.definition_text).unwrap();
    }
    out
}

/// Parses and validates a sidecar against its document.
pub fn parse_annotations(
    doc_id: &str,
    text: &[u8],
    ann: &str,
    path: &Path,
) -> Result<Vec<GoldAnnotation>, CorpusError> {
    let malformed =
        |line: usize, reason: String| CorpusError::MalformedAnnotation { path: path.to_owned(), line, reason };
    let mut lines = ann.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, ANN_HEADER)) => {}
        Some((_, other)) if other.starts_with("# ann ") => {
            return Err(malformed(1, format!("unsupported annotation format {other:?}")))
        }
        _ => return Err(malformed(1, format!("expected header {ANN_HEADER:?}"))),
    }
    let stream = tokenize(text);
    let mut out = Vec::new();
    for (line, record) in lines {
        if record.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = record.split('\t').collect();
        if fields.len() != 5 {
            return Err(malformed(line, format!("expected 5 tab-separated fields, found {}", fields.len())));
        }
        let offset = |i: usize, name: &str| {
            fields[i].parse::<usize>().map_err(|_| malformed(line, format!("{name} {:?} is not an offset", fields[i])))
        };
        let annotation = GoldAnnotation {
            doc_id: doc_id.to_owned(),
            acronym_offset: offset(0, "acronym offset")?,
            acronym: fields[1].to_owned(),
            definition_span: (offset(2, "first-word offset")?, offset(3, "last-word offset")?),
            definition_text: fields[4].to_owned(),
        };
        validate(&stream, text.len(), &annotation).map_err(|reason| malformed(line, reason))?;
        out.push(annotation);
    }
    out.sort();
    Ok(out)
}

fn validate(stream: &TokenStream, len: usize, a: &GoldAnnotation) -> Result<(), String> {
    let (first, last) = a.definition_span;
    for (name, offset) in [("acronym", a.acronym_offset), ("first word", first), ("last word", last)] {
        if offset >= len {
            return Err(format!("{name} offset {offset} past end of document ({len} bytes)"));
        }
    }
    let token_at = |offset: usize, name: &str| {
        stream.index_at(offset).ok_or_else(|| format!("{name} offset {offset} is not the start of a word"))
    };
    let acronym = token_at(a.acronym_offset, "acronym")?;
    if stream.get(acronym).unwrap().text != a.acronym {
        return Err(format!("text at offset {} is not {:?}", a.acronym_offset, a.acronym));
    }
    if a.acronym.len() < 2 {
        return Err(format!("acronym {:?} shorter than two letters", a.acronym));
    }
    let (i, j) = (token_at(first, "first word")?, token_at(last, "last word")?);
    if i > j {
        return Err("definition ends before it starts".into());
    }
    if (i..=j).contains(&acronym) {
        return Err("definition span contains the acronym".into());
    }
    let words: Vec<&str> = (i..=j).map(|k| stream.get(k).unwrap().text.as_str()).collect();
    if words.join(" ") != a.definition_text {
        return Err(format!("definition text {:?} does not match the words {:?}", a.definition_text, words.join(" ")));
    }
    Ok(())
}

/// Reads every `*.txt` in `dir` together with its `.ann` sidecar. A document
/// without a sidecar has no annotations.
pub fn load_corpus(dir: &Path) -> Result<Corpus, CorpusError> {
    let entries = fs::read_dir(dir).map_err(io_error(dir))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(io_error(dir))?.path();
        if path.extension().is_some_and(|e| e == "txt") {
            paths.push(path);
        }
    }
    if paths.is_empty() {
        return Err(CorpusError::MissingDocument(format!("no .txt documents in {}", dir.display())));
    }
    paths.sort();
    let mut documents = Vec::with_capacity(paths.len());
    for path in paths {
        let id = path.file_stem().unwrap().to_string_lossy().into_owned();
        let text = fs::read(&path).map_err(io_error(&path))?;
        let ann_path = path.with_extension("ann");
        let annotations = match fs::read_to_string(&ann_path) {
            Ok(ann) => parse_annotations(&id, &text, &ann, &ann_path)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(io_error(&ann_path)(e)),
        };
        documents.push(Document { id, text, annotations });
    }
    Ok(Corpus::new(documents))
}

/// Documents whose annotations train the models, and the held-out rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSplit {
    pub train: Vec<String>,
    pub test: Vec<String>,
}

/// Shuffles the sorted ids with a seeded ChaCha8 generator and sends the
/// first ⌈2n/3⌉ to training. Both halves come back sorted.
pub fn split_corpus(corpus: &Corpus, seed: u64) -> Result<CorpusSplit, CorpusError> {
    let n = corpus.len();
    if n < 3 {
        return Err(CorpusError::TooFewDocuments(n));
    }
    let mut ids = corpus.ids();
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut test = ids.split_off((2 * n).div_ceil(3));
    ids.sort();
    test.sort();
    Ok(CorpusSplit { train: ids, test })
}

/// The canonical-first code whose realized span is the gold span.
pub fn gold_code(stream: &TokenStream, annotation: &GoldAnnotation) -> Option<AcronymCode> {
    let index = stream.index_at(annotation.acronym_offset)?;
    let site = CandidateSite::at(stream, index)?;
    if !crate::text::is_candidate(&site.acronym) {
        return None;
    }
    enumerate_codes(&site)
        .into_iter()
        .find(|code| realize(code, &site).is_ok_and(|d| d.offsets() == annotation.definition_span))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldCodes {
    pub codes: Vec<AcronymCode>,
    /// Training annotations no code reproduces.
    pub skipped: Vec<GoldAnnotation>,
}

pub fn gold_codes(corpus: &Corpus, split: &CorpusSplit) -> GoldCodes {
    let mut out = GoldCodes::default();
    for doc in corpus.select(&split.train) {
        let stream = doc.tokens();
        for a in &doc.annotations {
            match gold_code(&stream, a) {
                Some(code) => out.codes.push(code),
                None => out.skipped.push(a.clone()),
            }
        }
    }
    out
}

/// Component models from the training gold codes, and a text model primed
/// on the training documents when `prime` is set.
pub fn train_models(
    corpus: &Corpus,
    split: &CorpusSplit,
    prime: bool,
) -> Result<(TrainedModels, GoldCodes), CorpusError> {
    let gold = gold_codes(corpus, split);
    let components = train_component_models(&gold.codes)?;
    let mut ppm = PpmModel::default();
    if prime {
        for doc in corpus.select(&split.train) {
            ppm.train(&doc.text);
        }
    }
    Ok((TrainedModels { components, ppm }, gold))
}

/// Annotation counts per acronym length.
pub fn length_histogram(corpus: &Corpus) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for a in corpus.annotations() {
        *out.entry(a.acronym.len()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BC: &str = "in the bootstrap checker (BC) we";

    fn ann(acronym: usize, acr: &str, first: usize, last: usize, text: &str) -> String {
        format!("{ANN_HEADER}\n{acronym}\t{acr}\t{first}\t{last}\t{text}\n")
    }

    fn parse(doc: &str, ann: &str) -> Result<Vec<GoldAnnotation>, CorpusError> {
        parse_annotations("d", doc.as_bytes(), ann, Path::new("d.ann"))
    }

    #[test]
    fn parses_and_reserializes() {
        let text = ann(26, "BC", 7, 17, "bootstrap checker");
        let parsed = parse(BC, &text).unwrap();
        assert_eq!(parsed[0].definition_span, (7, 17));
        assert_eq!(serialize_annotations(&parsed), text);
    }

    #[test]
    fn rejects_bad_records() {
        let line = |r: Result<_, CorpusError>| match r {
            Err(CorpusError::MalformedAnnotation { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line(parse(BC, &ann(99, "BC", 7, 17, "bootstrap checker"))), 2);
        assert_eq!(line(parse(BC, &ann(27, "BC", 7, 17, "bootstrap checker"))), 2);
        assert_eq!(line(parse(BC, &ann(26, "BC", 7, 17, "bootstrap"))), 2);
        assert_eq!(line(parse(BC, &ann(26, "BC", 17, 7, "checker bootstrap"))), 2);
        assert_eq!(line(parse(BC, "26\tBC\t7\t17\tbootstrap checker\n")), 1);
        assert_eq!(line(parse(BC, "# ann v2\n")), 1);
        assert_eq!(line(parse(BC, &format!("{ANN_HEADER}\n26\tBC\t7\n"))), 2);
    }

    #[test]
    fn definition_may_not_straddle_the_acronym() {
        let doc = "Semantic SIS Information Service";
        assert!(parse(doc, &ann(9, "SIS", 0, 25, "Semantic SIS Information Service")).is_err());
    }

    #[test]
    fn gold_code_for_bc() {
        let a = &parse(BC, &ann(26, "BC", 7, 17, "bootstrap checker")).unwrap()[0];
        assert_eq!(gold_code(&tokenize(BC), a).unwrap().to_string(), "- 2 <1> <1,1>");
    }

    #[test]
    fn unencodable_is_flagged_not_rejected() {
        let doc = "the Netherlands Organization for Scientific Research (NWO) funds";
        let a = parse(doc, &ann(54, "NWO", 4, 44, "Netherlands Organization for Scientific Research")).unwrap();
        assert_eq!(gold_code(&tokenize(doc), &a[0]), None);
    }

    fn corpus(n: usize) -> Corpus {
        Corpus::new(
            (0..n)
                .map(|i| Document { id: format!("doc{i:03}"), text: b"text".to_vec(), annotations: vec![] })
                .collect(),
        )
    }

    #[test]
    fn split_sizes() {
        let s = split_corpus(&corpus(150), 7).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (100, 50));
        let s = split_corpus(&corpus(3), 7).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (2, 1));
        assert!(matches!(split_corpus(&corpus(2), 7), Err(CorpusError::TooFewDocuments(2))));
    }

    #[test]
    fn split_is_seeded() {
        let c = corpus(30);
        assert_eq!(split_corpus(&c, 1).unwrap(), split_corpus(&c, 1).unwrap());
        assert_ne!(split_corpus(&c, 1).unwrap(), split_corpus(&c, 2).unwrap());
    }

    #[test]
    fn empty_train_split_gives_no_codes() {
        let split = CorpusSplit { train: vec![], test: corpus(3).ids() };
        assert_eq!(gold_codes(&corpus(3), &split), GoldCodes::default());
    }
}
