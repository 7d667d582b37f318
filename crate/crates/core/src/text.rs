//! Tokenization, candidate detection and context windows.
//!
//! Input is treated as a byte stream. Every maximal run of ASCII letters is a
//! token; everything else (digits, hyphens, slashes, punctuation, whitespace,
//! non-ASCII bytes) is a boundary and produces nothing. `WG10.2` therefore
//! yields the single token `WG`.

use std::ops::Range;

/// Number of words in each context window.
pub const WINDOW: usize = 16;

/// Inclusive bounds on the length of a candidate acronym.
pub const MIN_CANDIDATE_LEN: usize = 2;
pub const MAX_CANDIDATE_LEN: usize = 10;

/// A run of alphabetic characters and its byte span in the source document.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub text: String,
    pub span: Range<usize>,
}

impl Token {
    pub fn start(&self) -> usize {
        self.span.start
    }

    pub fn is_upper(&self) -> bool {
        self.text.bytes().all(|b| b.is_ascii_uppercase())
    }
}

/// Tokens of one document in source order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    tokens: Vec<Token>,
}

impl TokenStream {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Token> {
        self.tokens.get(index)
    }

    /// Index of the token starting exactly at byte `offset`.
    pub fn index_at(&self, offset: usize) -> Option<usize> {
        self.tokens.binary_search_by_key(&offset, Token::start).ok()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.text.as_str())
    }
}

impl From<Vec<Token>> for TokenStream {
    fn from(tokens: Vec<Token>) -> Self {
        TokenStream { tokens }
    }
}

pub fn tokenize(raw: impl AsRef<[u8]>) -> TokenStream {
    let raw = raw.as_ref();
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, &b) in raw.iter().enumerate() {
        match (b.is_ascii_alphabetic(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                tokens.push(make_token(raw, s..i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(make_token(raw, s..raw.len()));
    }
    TokenStream { tokens }
}

fn make_token(raw: &[u8], span: Range<usize>) -> Token {
    // Only ASCII letters reach here, so the slice is valid UTF-8.
    let text = raw[span.clone()].iter().map(|&b| b as char).collect();
    Token { text, span }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The definition comes before the acronym (`-`).
    DefinitionFirst,
    /// The acronym comes before its definition (`+`).
    AcronymFirst,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::DefinitionFirst, Direction::AcronymFirst];

    pub fn sign(self) -> char {
        match self {
            Direction::DefinitionFirst => '-',
            Direction::AcronymFirst => '+',
        }
    }
}

/// An upper-case token together with its surrounding words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSite {
    pub token_index: usize,
    pub acronym: Token,
    /// Up to [`WINDOW`] preceding tokens, nearest first.
    pub before: Vec<Token>,
    /// Up to [`WINDOW`] following tokens, nearest first.
    pub after: Vec<Token>,
}

impl CandidateSite {
    /// Builds the site for any token of the stream, candidate or not.
    pub fn at(stream: &TokenStream, token_index: usize) -> Option<CandidateSite> {
        let tokens = stream.tokens();
        let acronym = tokens.get(token_index)?.clone();
        let lo = token_index.saturating_sub(WINDOW);
        let hi = (token_index + 1 + WINDOW).min(tokens.len());
        Some(CandidateSite {
            token_index,
            acronym,
            before: tokens[lo..token_index].iter().rev().cloned().collect(),
            after: tokens[token_index + 1..hi].to_vec(),
        })
    }

    pub fn acronym_text(&self) -> &str {
        &self.acronym.text
    }

    pub fn window(&self, direction: Direction) -> &[Token] {
        match direction {
            Direction::DefinitionFirst => &self.before,
            Direction::AcronymFirst => &self.after,
        }
    }

    /// Token texts of one window, nearest first, case preserved.
    pub fn window_words(&self, direction: Direction) -> Vec<&str> {
        self.window(direction).iter().map(|t| t.text.as_str()).collect()
    }

    /// Stream index of the word `distance` positions away in `direction`
    /// (distance 1 is the adjacent word).
    pub fn stream_index(&self, direction: Direction, distance: usize) -> Option<usize> {
        if distance == 0 || distance > self.window(direction).len() {
            return None;
        }
        match direction {
            Direction::DefinitionFirst => Some(self.token_index - distance),
            Direction::AcronymFirst => Some(self.token_index + distance),
        }
    }
}

pub fn is_candidate(token: &Token) -> bool {
    (MIN_CANDIDATE_LEN..=MAX_CANDIDATE_LEN).contains(&token.text.len()) && token.is_upper()
}

/// Every all-upper-case token of 2 to 10 letters, in stream order. No reject
/// list is applied.
pub fn find_candidates(stream: &TokenStream) -> Vec<CandidateSite> {
    stream
        .tokens()
        .iter()
        .enumerate()
        .filter(|(_, t)| is_candidate(t))
        .filter_map(|(i, _)| CandidateSite::at(stream, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &str) -> Vec<String> {
        tokenize(s).texts().map(str::to_owned).collect()
    }

    #[test]
    fn slashes_hyphens_and_digits_are_boundaries() {
        assert_eq!(texts("MIT/LCS/TR-354"), ["MIT", "LCS", "TR"]);
        assert_eq!(texts("Point-to-Point Protocol (PPP)"), ["Point", "to", "Point", "Protocol", "PPP"]);
        assert_eq!(texts("UW-CSE-94-11-08, University"), ["UW", "CSE", "University"]);
        assert_eq!(texts("IFIP WG10.2 Advanced"), ["IFIP", "WG", "Advanced"]);
        assert!(texts("").is_empty());
        assert!(texts("1994 -- 42/7").is_empty());
    }

    #[test]
    fn spans_point_back_into_the_source() {
        let raw = "the Point-to-Point Protocol (PPP)";
        let stream = tokenize(raw);
        for t in stream.tokens() {
            assert_eq!(&raw[t.span.clone()], t.text);
        }
        assert_eq!(stream.get(5).unwrap().span, 29..32);
        assert_eq!(stream.index_at(29), Some(5));
        assert_eq!(stream.index_at(30), None);
    }

    #[test]
    fn non_ascii_bytes_split_words() {
        assert_eq!(texts("caf\u{e9}s na\u{ef}ve"), ["caf", "s", "na", "ve"]);
        let raw = [b'A', b'B', 0xff, b'C', b'D'];
        assert_eq!(tokenize(raw).len(), 2);
    }

    #[test]
    fn single_candidate_with_windows() {
        let stream = tokenize("the ROM chip");
        let sites = find_candidates(&stream);
        assert_eq!(sites.len(), 1);
        let site = &sites[0];
        assert_eq!(site.acronym_text(), "ROM");
        assert_eq!(site.window_words(Direction::DefinitionFirst), ["the"]);
        assert_eq!(site.window_words(Direction::AcronymFirst), ["chip"]);
    }

    #[test]
    fn no_reject_list_and_no_mixed_case() {
        let sites = find_candidates(&tokenize("see TABLE 1"));
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].acronym_text(), "TABLE");
        assert!(find_candidates(&tokenize("can't stop")).is_empty());
        assert!(find_candidates(&tokenize("AmVets and CVEs, a X")).is_empty());
        assert!(find_candidates(&tokenize("ABCDEFGHIJK")).is_empty());
        assert_eq!(find_candidates(&tokenize("ABCDEFGHIJ")).len(), 1);
    }

    #[test]
    fn windows_truncate_at_document_edges() {
        let sites = find_candidates(&tokenize("Both the Bandwidth Contraction (BC) algorithm"));
        assert_eq!(sites[0].window_words(Direction::DefinitionFirst), ["Contraction", "Bandwidth", "the", "Both"]);
        let start = find_candidates(&tokenize("ROM first"));
        assert!(start[0].window_words(Direction::DefinitionFirst).is_empty());

        let long: String = (0..40).map(|i| format!("w{} ", "x".repeat(i % 5 + 1))).collect();
        let raw = format!("{long} ABC {long}");
        let sites = find_candidates(&tokenize(raw));
        assert_eq!(sites[0].before.len(), WINDOW);
        assert_eq!(sites[0].after.len(), WINDOW);
    }

    #[test]
    fn stream_index_maps_distances() {
        let stream = tokenize("a b C D ZZ e f");
        let site = CandidateSite::at(&stream, 4).unwrap();
        assert_eq!(site.stream_index(Direction::DefinitionFirst, 1), Some(3));
        assert_eq!(site.stream_index(Direction::DefinitionFirst, 4), Some(0));
        assert_eq!(site.stream_index(Direction::DefinitionFirst, 5), None);
        assert_eq!(site.stream_index(Direction::AcronymFirst, 2), Some(6));
        assert_eq!(site.stream_index(Direction::AcronymFirst, 0), None);
    }
}
