//! Heuristic extractors kept for comparison with the compression method.
//!
//! - [`afp`]: longest-common-subsequence matching on initial letters.
//! - [`tla`]: prefix matching (up to six letters per word) with a naive Bayes
//!   accept/reject model ([`bayes`]).
//! - [`simple`]: exact first-letter matching on adjacent words.

pub mod afp;
pub mod bayes;
pub mod lcs;
pub mod simple;
pub mod tla;

use std::collections::HashSet;
use std::path::Path;

use thiserror::Error;

use crate::codec::{AcronymCode, DefinitionSpan};
use crate::text::{CandidateSite, Direction, TokenStream};

pub use afp::{afp_extract, AfpConfig};
pub use bayes::{nb_classify, nb_train, NaiveBayesModel};
pub use lcs::{lcs, lcs_str, Lcs};
pub use simple::simple_extract;
pub use tla::{tla_candidates, tla_extract, tla_match, tla_train, tla_training_set, TlaCandidate, TlaFeatures};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaselineError {
    #[error("naive Bayes training needs examples of both classes")]
    DegenerateTraining,
    #[error("cannot read stopword list {path}: {reason}")]
    Stopwords { path: String, reason: String },
}

/// Common English function words, shared by AFP and TLA.
pub const STOPWORDS: [&str; 50] = [
    "a", "about", "after", "all", "also", "an", "and", "any", "are", "as", "at", "be", "been", "but", "by", "can",
    "for", "from", "has", "have", "he", "her", "his", "if", "in", "into", "is", "it", "its", "more", "no", "not", "of",
    "on", "or", "other", "so", "such", "than", "that", "the", "their", "there", "these", "they", "this", "to", "was",
    "were", "with",
];

/// Lower-cased stopword set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Default for Stopwords {
    fn default() -> Self {
        Stopwords(STOPWORDS.iter().map(|w| w.to_string()).collect())
    }
}

impl Stopwords {
    pub fn from_words<I: IntoIterator<Item = S>, S: AsRef<str>>(words: I) -> Self {
        Stopwords(words.into_iter().map(|w| w.as_ref().to_ascii_lowercase()).collect())
    }

    /// One word per line; blank lines and `#` comments are ignored.
    pub fn load(path: &Path) -> Result<Self, BaselineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BaselineError::Stopwords { path: path.display().to_string(), reason: e.to_string() })?;
        Ok(Self::from_words(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(&word.to_ascii_lowercase())
    }
}

/// One baseline extraction. `code` lists the matched words in the same
/// notation the compression extractor uses, so every method shares one
/// record format.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineMatch {
    pub acronym: String,
    pub offset: usize,
    pub code: AcronymCode,
    pub definition: DefinitionSpan,
    pub score: f64,
}

/// Builds the code and definition for words at the given stream indices
/// (document order, all on one side of the site).
pub(crate) fn describe(
    stream: &TokenStream,
    site: &CandidateSite,
    direction: Direction,
    matched: &[usize],
    letter_counts: Vec<usize>,
) -> (AcronymCode, DefinitionSpan) {
    let distance = |i: usize| i.abs_diff(site.token_index);
    let code = AcronymCode::new(
        direction,
        distance(matched[0]),
        matched.windows(2).map(|w| w[1] - w[0]).collect(),
        letter_counts,
    );
    let (first, last) = (matched[0], *matched.last().unwrap());
    let words: Vec<_> = (first..=last).map(|i| stream.get(i).unwrap()).collect();
    (code, DefinitionSpan::from_tokens(matched.to_vec(), &words))
}
