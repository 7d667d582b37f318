//! TLA-style extraction: greedy prefix matching of window words against the
//! acronym, followed by a naive Bayes accept/reject decision over four
//! numeric features.

use super::bayes::{nb_classify, NaiveBayesModel};
use super::BaselineError;
use super::{describe, BaselineMatch, Stopwords};
use crate::codec::MAX_LETTERS_PER_WORD;
use crate::corpus::Corpus;
use crate::text::{find_candidates, tokenize, CandidateSite, Direction, TokenStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TlaFeatures {
    pub acronym_chars: usize,
    /// Characters from the first to the last definition word, counting one
    /// space between words.
    pub definition_chars: usize,
    pub definition_words: usize,
    pub stopword_count: usize,
}

impl TlaFeatures {
    pub fn to_vec(self) -> Vec<f64> {
        vec![
            self.acronym_chars as f64,
            self.definition_chars as f64,
            self.definition_words as f64,
            self.stopword_count as f64,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TlaCandidate {
    pub found: BaselineMatch,
    pub features: TlaFeatures,
}

/// Greedy scan over `words` in reading order. A word whose first letter
/// differs from the next acronym letter is skipped; otherwise successive
/// letters are consumed while they match, up to six. Returns the indices of
/// consuming words and their letter counts once the acronym is spelled out.
pub fn tla_match(acronym: &str, words: &[&str]) -> Option<(Vec<usize>, Vec<usize>)> {
    let acronym = acronym.as_bytes();
    let mut consumed = 0;
    let (mut used, mut counts) = (Vec::new(), Vec::new());
    for (i, word) in words.iter().enumerate() {
        if consumed == acronym.len() {
            break;
        }
        let n = word
            .bytes()
            .zip(&acronym[consumed..])
            .take(MAX_LETTERS_PER_WORD)
            .take_while(|(w, a)| w.eq_ignore_ascii_case(a))
            .count();
        if n > 0 {
            used.push(i);
            counts.push(n);
            consumed += n;
        }
    }
    (consumed == acronym.len() && !acronym.is_empty()).then_some((used, counts))
}

fn features(
    stream: &TokenStream,
    acronym_chars: usize,
    first: usize,
    last: usize,
    stopwords: &Stopwords,
) -> TlaFeatures {
    let words: Vec<&str> = (first..=last).map(|i| stream.get(i).unwrap().text.as_str()).collect();
    TlaFeatures {
        acronym_chars,
        definition_chars: words.iter().map(|w| w.len()).sum::<usize>() + words.len() - 1,
        definition_words: words.len(),
        stopword_count: words.iter().filter(|w| stopwords.contains(w)).count(),
    }
}

/// Nearest match in one direction. Each start word must match the first
/// acronym letter, and the scan runs in reading order from there.
fn match_site(
    stream: &TokenStream,
    site: &CandidateSite,
    direction: Direction,
    stopwords: &Stopwords,
) -> Option<TlaCandidate> {
    let window = site.window(direction);
    let ordered: Vec<usize> = match direction {
        Direction::DefinitionFirst => (1..=window.len()).rev().collect(),
        Direction::AcronymFirst => (1..=window.len()).collect(),
    };
    let words: Vec<&str> = ordered.iter().map(|&d| window[d - 1].text.as_str()).collect();
    let starts: Vec<usize> = match direction {
        Direction::DefinitionFirst => (0..words.len()).rev().collect(),
        Direction::AcronymFirst => (0..words.len()).collect(),
    };
    let first = site.acronym_text().as_bytes()[0];
    for start in starts {
        if !words[start].as_bytes()[0].eq_ignore_ascii_case(&first) {
            continue;
        }
        if let Some((used, counts)) = tla_match(site.acronym_text(), &words[start..]) {
            let matched: Vec<usize> =
                used.iter().map(|&i| site.stream_index(direction, ordered[start + i]).unwrap()).collect();
            let (code, definition) = describe(stream, site, direction, &matched, counts);
            let features = features(stream, site.acronym_text().len(), matched[0], *matched.last().unwrap(), stopwords);
            return Some(TlaCandidate {
                found: BaselineMatch {
                    acronym: site.acronym_text().to_owned(),
                    offset: site.acronym.start(),
                    code,
                    definition,
                    score: 0.0,
                },
                features,
            });
        }
    }
    None
}

/// Every upper-case candidate with a prefix match, one per direction that
/// has one, definition-first before acronym-first.
pub fn tla_candidates(document: &[u8], stopwords: &Stopwords) -> Vec<TlaCandidate> {
    let stream = tokenize(document);
    find_candidates(&stream)
        .iter()
        .flat_map(|site| Direction::BOTH.into_iter().filter_map(|d| match_site(&stream, site, d, stopwords)))
        .collect()
}

/// Keeps the candidates the classifier accepts, at most one per acronym
/// occurrence (the higher posterior), scored by posterior.
pub fn tla_extract(document: &[u8], model: &NaiveBayesModel, stopwords: &Stopwords) -> Vec<BaselineMatch> {
    let mut out: Vec<BaselineMatch> = Vec::new();
    for candidate in tla_candidates(document, stopwords) {
        let (accept, posterior) = nb_classify(model, &candidate.features.to_vec());
        if !accept {
            continue;
        }
        let mut found = candidate.found;
        found.score = posterior;
        match out.last_mut() {
            Some(prev) if prev.offset == found.offset => {
                if found.score > prev.score {
                    *prev = found;
                }
            }
            _ => out.push(found),
        }
    }
    out
}

/// Labelled feature vectors from the candidates in `ids`: a candidate is
/// positive when its occurrence and definition span match a gold annotation.
pub fn tla_training_set(corpus: &Corpus, ids: &[String], stopwords: &Stopwords) -> Vec<(Vec<f64>, bool)> {
    let mut out = Vec::new();
    for doc in corpus.select(ids) {
        for c in tla_candidates(&doc.text, stopwords) {
            let span = c.found.definition.offsets();
            let label = doc.annotations.iter().any(|a| a.acronym_offset == c.found.offset && a.definition_span == span);
            out.push((c.features.to_vec(), label));
        }
    }
    out
}

pub fn tla_train(corpus: &Corpus, ids: &[String], stopwords: &Stopwords) -> Result<NaiveBayesModel, BaselineError> {
    super::nb_train(&tla_training_set(corpus, ids, stopwords))
}
