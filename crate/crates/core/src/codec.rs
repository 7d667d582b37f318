//! Acronym codes: locating each letter of an acronym among the initial
//! letters of nearby words.
//!
//! A code names a direction, the distance from the acronym to the first
//! definition word, the offsets between successive definition words (in
//! document order) and how many leading letters each word contributes.
//! `- 2 <1> <1,1>` reads "go back two words, use that word and the next one,
//! one letter from each".

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::text::{CandidateSite, Direction, Token, WINDOW};

/// Most letters any single word may contribute.
pub const MAX_LETTERS_PER_WORD: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("illegal code: {0}")]
    IllegalCode(String),
    #[error("cannot parse code {text:?}: {reason}")]
    Parse { text: String, reason: &'static str },
}

/// Field order gives the canonical order used to break cost ties:
/// `-` before `+`, then nearer first words, then lexicographic offsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcronymCode {
    pub direction: Direction,
    pub first_distance: usize,
    pub word_offsets: Vec<usize>,
    pub letter_counts: Vec<usize>,
}

impl AcronymCode {
    pub fn new(
        direction: Direction,
        first_distance: usize,
        word_offsets: Vec<usize>,
        letter_counts: Vec<usize>,
    ) -> Self {
        AcronymCode { direction, first_distance, word_offsets, letter_counts }
    }

    pub fn word_count(&self) -> usize {
        self.letter_counts.len()
    }

    pub fn letter_total(&self) -> usize {
        self.letter_counts.iter().sum()
    }

    /// Distance from the acronym of every referenced word, in document order.
    /// `None` if a `-` code walks past the acronym.
    pub fn distances(&self) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.word_offsets.len() + 1);
        let mut d = self.first_distance;
        out.push(d);
        for &off in &self.word_offsets {
            d = match self.direction {
                Direction::AcronymFirst => d.checked_add(off)?,
                Direction::DefinitionFirst => d.checked_sub(off)?,
            };
            out.push(d);
        }
        Some(out)
    }

    /// Structural checks that need no context.
    pub fn check_shape(&self) -> Result<(), CodecError> {
        let illegal = |msg: &str| Err(CodecError::IllegalCode(msg.to_owned()));
        if self.letter_counts.len() != self.word_offsets.len() + 1 {
            return illegal("letter counts must number one more than offsets");
        }
        if self.first_distance == 0 || self.word_offsets.contains(&0) {
            return illegal("distances and offsets start at 1");
        }
        if self.letter_counts.iter().any(|&n| n == 0 || n > MAX_LETTERS_PER_WORD) {
            return illegal("letter counts must lie in 1..=6");
        }
        match self.distances() {
            Some(ds) if ds.iter().all(|&d| (1..=WINDOW).contains(&d)) => Ok(()),
            _ => illegal("code references a word outside the window"),
        }
    }
}

impl fmt::Display for AcronymCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} <{}> <{}>",
            self.direction.sign(),
            self.first_distance,
            join(&self.word_offsets),
            join(&self.letter_counts)
        )
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Renders the `- 4 <3> <4,3>` display form.
pub fn code_to_display(code: &AcronymCode) -> String {
    code.to_string()
}

impl FromStr for AcronymCode {
    type Err = CodecError;

    /// Accepts the display form with any run of whitespace between fields.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| CodecError::Parse { text: s.to_owned(), reason };
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [sign, first, offsets, counts] = parts[..] else {
            return Err(err("expected four fields"));
        };
        let direction = match sign {
            "-" => Direction::DefinitionFirst,
            "+" => Direction::AcronymFirst,
            _ => return Err(err("direction must be + or -")),
        };
        let first_distance = first.parse().map_err(|_| err("bad first distance"))?;
        let list = |field: &str| -> Result<Vec<usize>, CodecError> {
            let inner = field
                .strip_prefix('<')
                .and_then(|f| f.strip_suffix('>'))
                .ok_or_else(|| err("lists are written <a,b,...>"))?;
            if inner.is_empty() {
                return Ok(Vec::new());
            }
            inner.split(',').map(|n| n.parse().map_err(|_| err("bad list element"))).collect()
        };
        Ok(AcronymCode { direction, first_distance, word_offsets: list(offsets)?, letter_counts: list(counts)? })
    }
}

/// The words a code selects, with their stream indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinitionSpan {
    /// Stream indices of the words that contribute letters.
    pub word_indices: Vec<usize>,
    /// Every word from the first to the last, joined by single spaces.
    pub text: String,
    /// Byte offset of the first definition word.
    pub first_offset: usize,
    /// Byte offset of the last definition word.
    pub last_offset: usize,
}

impl DefinitionSpan {
    pub fn from_tokens(indices: Vec<usize>, tokens: &[&Token]) -> Self {
        DefinitionSpan {
            text: tokens.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" "),
            first_offset: tokens.first().map_or(0, |t| t.start()),
            last_offset: tokens.last().map_or(0, |t| t.start()),
            word_indices: indices,
        }
    }

    pub fn offsets(&self) -> (usize, usize) {
        (self.first_offset, self.last_offset)
    }
}

fn prefix_matches(word: &[u8], acronym: &[u8], len: usize) -> bool {
    word.len() >= len && acronym.len() >= len && word[..len].eq_ignore_ascii_case(&acronym[..len])
}

/// Resolves a code against a site.
pub fn realize(code: &AcronymCode, site: &CandidateSite) -> Result<DefinitionSpan, CodecError> {
    code.check_shape()?;
    let acronym = site.acronym_text().as_bytes();
    if code.letter_total() != acronym.len() {
        return Err(CodecError::IllegalCode(format!(
            "code covers {} letters, acronym has {}",
            code.letter_total(),
            acronym.len()
        )));
    }
    let window = site.window(code.direction);
    let distances = code.distances().expect("shape checked");
    let mut consumed = 0;
    let mut indices = Vec::with_capacity(distances.len());
    for (&d, &n) in distances.iter().zip(&code.letter_counts) {
        let word = window
            .get(d - 1)
            .ok_or_else(|| CodecError::IllegalCode(format!("word {d} lies beyond the {}-word window", window.len())))?;
        if !prefix_matches(word.text.as_bytes(), &acronym[consumed..], n) {
            return Err(CodecError::IllegalCode(format!(
                "{n} letters of {:?} do not continue {:?}",
                word.text,
                site.acronym_text()
            )));
        }
        consumed += n;
        indices.push(site.stream_index(code.direction, d).expect("inside window"));
    }
    let (near, far) =
        (distances[0].min(distances[distances.len() - 1]), distances[0].max(distances[distances.len() - 1]));
    let mut words: Vec<&Token> = window[near - 1..far].iter().collect();
    if code.direction == Direction::DefinitionFirst {
        words.reverse();
    }
    Ok(DefinitionSpan::from_tokens(indices, &words))
}

/// Every legal code for the site over both windows, in canonical order.
pub fn enumerate_codes(site: &CandidateSite) -> Vec<AcronymCode> {
    let acronym = site.acronym_text().as_bytes();
    let mut out = Vec::new();
    if acronym.is_empty() {
        return out;
    }
    for direction in Direction::BOTH {
        // Words in document order, each tagged with its distance.
        let window = site.window(direction);
        let ordered: Vec<(usize, &[u8])> = match direction {
            Direction::DefinitionFirst => {
                window.iter().enumerate().rev().map(|(i, t)| (i + 1, t.text.as_bytes())).collect()
            }
            Direction::AcronymFirst => window.iter().enumerate().map(|(i, t)| (i + 1, t.text.as_bytes())).collect(),
        };
        let mut path = Vec::new();
        search(direction, &ordered, acronym, 0, 0, &mut path, &mut out);
    }
    out.sort();
    out
}

fn search(
    direction: Direction,
    words: &[(usize, &[u8])],
    acronym: &[u8],
    from: usize,
    consumed: usize,
    path: &mut Vec<(usize, usize)>,
    out: &mut Vec<AcronymCode>,
) {
    let rest = &acronym[consumed..];
    for (i, &(distance, word)) in words.iter().enumerate().skip(from) {
        if word.is_empty() || !word[0].eq_ignore_ascii_case(&rest[0]) {
            continue;
        }
        let max = MAX_LETTERS_PER_WORD.min(word.len()).min(rest.len());
        for n in 1..=max {
            if !word[n - 1].eq_ignore_ascii_case(&rest[n - 1]) {
                break;
            }
            path.push((distance, n));
            if n == rest.len() {
                out.push(code_from_path(direction, path));
            } else {
                search(direction, words, acronym, i + 1, consumed + n, path, out);
            }
            path.pop();
        }
    }
}

fn code_from_path(direction: Direction, path: &[(usize, usize)]) -> AcronymCode {
    AcronymCode {
        direction,
        first_distance: path[0].0,
        word_offsets: path.windows(2).map(|w| w[0].0.abs_diff(w[1].0)).collect(),
        letter_counts: path.iter().map(|&(_, n)| n).collect(),
    }
}
