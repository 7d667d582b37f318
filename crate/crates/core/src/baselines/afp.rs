//! AFP-style extraction: upper-case candidates of three to ten letters,
//! windows of twice the acronym length on each side, and a longest common
//! subsequence between the acronym and the initial letters of window words.
//!
//! Competing alignments are ranked lexicographically by normal words
//! skipped inside the definition, words spanned, distance to the acronym and
//! stopword density: the shortest, closest definition with the fewest stop
//! words wins.

use std::collections::HashSet;

use super::lcs::{lcs, maximal_alignments};
use super::{describe, BaselineMatch, Stopwords};
use crate::text::{tokenize, CandidateSite, Direction, TokenStream};

/// Caps the number of tied alignments examined per window.
const MAX_ALIGNMENTS: usize = 4096;

#[derive(Debug, Clone)]
pub struct AfpConfig {
    pub reject_words: HashSet<String>,
    pub stopwords: Stopwords,
    pub min_len: usize,
    pub max_len: usize,
    /// Fraction of acronym letters the subsequence must cover.
    pub min_match_ratio: f64,
}

impl Default for AfpConfig {
    fn default() -> Self {
        let mut reject_words: HashSet<String> = ["TABLE", "FIGURE"].iter().map(|s| s.to_string()).collect();
        reject_words.extend((1..=39).map(roman));
        AfpConfig { reject_words, stopwords: Stopwords::default(), min_len: 3, max_len: 10, min_match_ratio: 0.75 }
    }
}

pub fn roman(mut n: u32) -> String {
    const DIGITS: [(u32, &str); 13] = [
        (1000, "M"),
        (900, "CM"),
        (500, "D"),
        (400, "CD"),
        (100, "C"),
        (90, "XC"),
        (50, "L"),
        (40, "XL"),
        (10, "X"),
        (9, "IX"),
        (5, "V"),
        (4, "IV"),
        (1, "I"),
    ];
    let mut out = String::new();
    for (value, digits) in DIGITS {
        while n >= value {
            out.push_str(digits);
            n -= value;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, PartialOrd)]
struct Rank {
    skipped_normal: usize,
    spanned: usize,
    distance: usize,
    stop_density: f64,
}

pub fn afp_extract(document: &[u8], config: &AfpConfig) -> Vec<BaselineMatch> {
    let stream = tokenize(document);
    let mut out = Vec::new();
    for (index, token) in stream.tokens().iter().enumerate() {
        let len = token.text.len();
        if len < config.min_len || len > config.max_len || !token.is_upper() {
            continue;
        }
        if config.reject_words.contains(&token.text) {
            continue;
        }
        let site = CandidateSite::at(&stream, index).expect("index in range");
        if let Some(m) = best_definition(&stream, &site, config) {
            out.push(m);
        }
    }
    out
}

fn best_definition(stream: &TokenStream, site: &CandidateSite, config: &AfpConfig) -> Option<BaselineMatch> {
    let acronym: Vec<u8> = site.acronym_text().bytes().map(|b| b.to_ascii_lowercase()).collect();
    let span = 2 * acronym.len();
    let required = (config.min_match_ratio * acronym.len() as f64).ceil() as usize;
    let mut best: Option<(Rank, BaselineMatch)> = None;
    for direction in Direction::BOTH {
        let indices: Vec<usize> = match direction {
            Direction::DefinitionFirst => (site.token_index.saturating_sub(span)..site.token_index).collect(),
            Direction::AcronymFirst => {
                (site.token_index + 1..(site.token_index + 1 + span).min(stream.len())).collect()
            }
        };
        let initials: Vec<u8> =
            indices.iter().map(|&i| stream.get(i).unwrap().text.as_bytes()[0].to_ascii_lowercase()).collect();
        let matched_len = lcs(&acronym, &initials).len;
        if matched_len == 0 || matched_len < required {
            continue;
        }
        for alignment in maximal_alignments(&acronym, &initials, MAX_ALIGNMENTS) {
            let matched: Vec<usize> = alignment.iter().map(|&k| indices[k]).collect();
            let rank = rank(stream, site, direction, &matched, &config.stopwords);
            if best.as_ref().is_some_and(|(r, _)| *r <= rank) {
                continue;
            }
            let (code, definition) = describe(stream, site, direction, &matched, vec![1; matched.len()]);
            let m = BaselineMatch {
                acronym: site.acronym_text().to_owned(),
                offset: site.acronym.start(),
                code,
                definition,
                score: matched_len as f64 / acronym.len() as f64,
            };
            best = Some((rank, m));
        }
    }
    best.map(|(_, m)| m)
}

fn rank(stream: &TokenStream, site: &CandidateSite, direction: Direction, matched: &[usize], stop: &Stopwords) -> Rank {
    let (first, last) = (matched[0], *matched.last().unwrap());
    let is_stop = |i: usize| stop.contains(&stream.get(i).unwrap().text);
    let skipped_normal = (first..=last).filter(|i| !matched.contains(i) && !is_stop(*i)).count();
    let stops = (first..=last).filter(|&i| is_stop(i)).count();
    let spanned = last - first + 1;
    let distance = match direction {
        Direction::DefinitionFirst => site.token_index - last - 1,
        Direction::AcronymFirst => first - site.token_index - 1,
    };
    Rank { skipped_normal, spanned, distance, stop_density: stops as f64 / spanned as f64 }
}
