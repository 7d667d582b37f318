//! The line format shared by every extraction method.
//!
//! One record per line, tab separated:
//!
//! ```text
//! doc-id  offset  acronym  code  first-word-offset  last-word-offset  definition  score
//! ```

use std::fmt;
use std::str::FromStr;

use crate::baselines::BaselineMatch;
use crate::codec::AcronymCode;
use crate::extractor::Extraction;

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub doc_id: String,
    pub offset: usize,
    pub acronym: String,
    pub code: AcronymCode,
    pub definition_span: (usize, usize),
    pub definition_text: String,
    pub score: f64,
}

impl Prediction {
    pub fn from_extraction(doc_id: &str, e: &Extraction) -> Self {
        Prediction {
            doc_id: doc_id.to_owned(),
            offset: e.offset(),
            acronym: e.acronym.clone(),
            code: e.code.clone(),
            definition_span: e.definition.offsets(),
            definition_text: e.definition.text.clone(),
            score: e.score,
        }
    }

    pub fn from_baseline(doc_id: &str, m: &BaselineMatch) -> Self {
        Prediction {
            doc_id: doc_id.to_owned(),
            offset: m.offset,
            acronym: m.acronym.clone(),
            code: m.code.clone(),
            definition_span: m.definition.offsets(),
            definition_text: m.definition.text.clone(),
            score: m.score,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6}",
            self.doc_id,
            self.offset,
            self.acronym,
            self.code,
            self.definition_span.0,
            self.definition_span.1,
            self.definition_text,
            self.score
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError(pub String);

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad prediction record: {}", self.0)
    }
}

impl std::error::Error for RecordError {}

impl FromStr for Prediction {
    type Err = RecordError;

    fn from_str(line: &str) -> Result<Self, RecordError> {
        let fields: Vec<&str> = line.trim_end_matches(['\r', '\n']).split('\t').collect();
        let [doc_id, offset, acronym, code, first, last, text, score] = fields[..] else {
            return Err(RecordError(format!("expected 8 fields, found {}", fields.len())));
        };
        let number = |s: &str| s.parse::<usize>().map_err(|_| RecordError(format!("{s:?} is not an offset")));
        Ok(Prediction {
            doc_id: doc_id.to_owned(),
            offset: number(offset)?,
            acronym: acronym.to_owned(),
            code: code.parse().map_err(|e| RecordError(format!("{e}")))?,
            definition_span: (number(first)?, number(last)?),
            definition_text: text.to_owned(),
            score: score.parse().map_err(|_| RecordError(format!("{score:?} is not a score")))?,
        })
    }
}

/// Parses every non-blank line.
pub fn parse_predictions(text: &str) -> Result<Vec<Prediction>, RecordError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
}
