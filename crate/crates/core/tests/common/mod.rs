//! Fixtures and slow-but-obvious reference implementations shared by the
//! integration tests. Nothing here calls into the code under test except to
//! build inputs.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use acromine::{AcronymCode, CandidateSite, Direction};
use rand::Rng;

/// Acronym, context as printed, expected code.
pub const GOLDEN_CODES: [(&str, &str, &str); 13] = [
    ("BC", "Both the Bandwidth Contraction (BC) algorithm", "- 2 <1> <1,1>"),
    ("OTC", "OTC represents one time costs that are not spread", "+ 2 <1,1> <1,1,1>"),
    ("FG", "For fast Givens transformations Equation 2 becomes Total flops FG = 23 ( Ttotal ) +", "- 7 <1> <1,1>"),
    (
        "CHARME",
        "CHARME '93: IFIP WG10.2 Advanced Research Working Conference on Correct Hardware Design and \
         Verification Methods",
        "+ 8 <1,4> <1,3,2>",
    ),
    ("CDAG", "the cluster dependency DAG (CDAG)", "- 3 <2> <1,3>"),
    ("COMPCON", "In Procedures of the IEEE Computer Society International Conference (COMPCON)", "- 4 <3> <4,3>"),
    (
        "OOPSLA",
        "In N. Meyrowitz, editor, Object-Oriented Programming Systems, Languages and Applications (OOPSLA '86)",
        "- 7 <1,1,1,1,2> <1,1,1,1,1,1>",
    ),
    ("PPP", "the Point-to-Point Protocol (PPP) [Sim93, McG92]", "- 4 <2,1> <1,1,1>"),
    (
        "LCS",
        "Ph.D. thesis, Laboratory for Computer Science, Massachusetts Institute of Technology, Technical report \
         MIT/LCS/TR-354",
        "- 11 <2,1> <1,1,1>",
    ),
    (
        "MIT",
        "Ph.D. thesis, Laboratory for Computer Science, Massachusetts Institute of Technology, Technical report \
         MIT/LCS/TR-354",
        "- 6 <1,2> <1,1,1>",
    ),
    (
        "TR",
        "Ph.D. thesis, Laboratory for Computer Science, Massachusetts Institute of Technology, Technical report \
         MIT/LCS/TR-354",
        "- 4 <1> <1,1>",
    ),
    ("TR", "Also available as Technical Report TR94-1468", "- 2 <1> <1,1>"),
    ("UW", "Technical Report UW-CSE-94-11-08, University of Washington", "+ 2 <2> <1,1>"),
];

/// Acronym, context, expansion that no code may reproduce.
pub const UNREACHABLE: [(&str, &str, &str); 8] = [
    (
        "ISO",
        "International Organisation for Standardisation document ISO/IEC JTC1/SC29",
        "International Organisation for Standardisation",
    ),
    (
        "NWO",
        "the Netherlands Organization for Scientific Research (NWO)",
        "Netherlands Organization for Scientific Research",
    ),
    ("PITS", "two considers Populated Information Terrains (PITS)", "Populated Information Terrains"),
    ("CVEs", "so called Collaborative Virtual Environments (CVEs)", "Collaborative Virtual Environments"),
    (
        "SIS",
        "and Shared Interface (SIS) Services, prototyped in the work of strand 4",
        "Shared Interface (SIS) Services",
    ),
    ("NETBW", "by the network bandwidth (NETBW )", "network bandwidth"),
    ("JPTN", "A Jumping Petri Net ([18], [12]), JPTN for short", "Jumping Petri Net"),
    ("B8ZS", "Bipolar with eight zero substitution coding (B8ZS)", "Bipolar with eight zero substitution coding"),
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn synthetic_dir() -> PathBuf {
    data_dir().join("synthetic")
}

/// `(doc, offset, acronym, kind)` rows of the synthetic corpus manifest.
pub fn manifest() -> Vec<(String, usize, String, String)> {
    let text = std::fs::read_to_string(synthetic_dir().join("MANIFEST.tsv")).unwrap();
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_owned(), f[1].parse().unwrap(), f[2].to_owned(), f[3].to_owned())
        })
        .collect()
}

/// Byte offsets of the first and last word of `phrase` inside `context`,
/// where words are maximal ASCII letter runs.
pub fn phrase_offsets(context: &str, phrase: &str) -> (usize, usize) {
    let start = context.find(phrase).expect("phrase in context");
    let words: Vec<(usize, &str)> = letter_runs(&context[start..start + phrase.len()]);
    (start + words[0].0, start + words[words.len() - 1].0)
}

fn letter_runs(s: &str) -> Vec<(usize, &str)> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() {
            let j = (i..bytes.len()).find(|&k| !bytes[k].is_ascii_alphabetic()).unwrap_or(bytes.len());
            out.push((i, &s[i..j]));
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Codes

/// Every code for a site by exhaustion: each non-empty subset of window words
/// (taken in reading order), each assignment of 1..=6 letters per word, kept
/// when the prefixes concatenate to the acronym.
pub fn brute_force_codes(site: &CandidateSite) -> BTreeSet<AcronymCode> {
    let acronym = site.acronym_text().to_ascii_lowercase();
    let mut out = BTreeSet::new();
    for direction in Direction::BOTH {
        let words: Vec<String> = site.window(direction).iter().map(|t| t.text.to_ascii_lowercase()).collect();
        assert!(words.len() <= 16);
        for mask in 1u32..(1 << words.len()) {
            // Distances in reading order.
            let mut chosen: Vec<usize> = (0..words.len()).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            if direction == Direction::DefinitionFirst {
                chosen.reverse();
            }
            if chosen.len() > acronym.len() {
                continue;
            }
            for counts in compositions(acronym.len(), chosen.len(), 6) {
                let mut spelled = String::new();
                let mut ok = true;
                for (&d, &n) in chosen.iter().zip(&counts) {
                    let w = &words[d - 1];
                    if w.len() < n {
                        ok = false;
                        break;
                    }
                    spelled.push_str(&w[..n]);
                }
                if ok && spelled == acronym {
                    let offsets = chosen.windows(2).map(|p| p[0].abs_diff(p[1])).collect();
                    out.insert(AcronymCode::new(direction, chosen[0], offsets, counts));
                }
            }
        }
    }
    out
}

/// All ways to write `total` as `parts` positive integers, each at most `max`.
pub fn compositions(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=max.min(total) {
        for mut rest in compositions(total - first, parts - 1, max) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A random document of at most `max_side` words on each side of a random
/// upper-case acronym, drawn from a three-letter alphabet so that matches are
/// common. Returns the text and the acronym's token index.
pub fn random_site_text(rng: &mut impl Rng, max_side: usize) -> (String, usize) {
    let letters = b"abc";
    let word = |rng: &mut dyn rand::RngCore, len: usize| -> String {
        (0..len)
            .map(|_| {
                let c = letters[rng.gen_range(0..3)] as char;
                if rng.gen_bool(0.3) {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    };
    let before = rng.gen_range(0..=max_side);
    let after = rng.gen_range(0..=max_side);
    let mut words = Vec::new();
    for _ in 0..before {
        let len = rng.gen_range(1..=7);
        words.push(word(rng, len));
    }
    let acr_len = rng.gen_range(2..=5);
    words.push((0..acr_len).map(|_| (letters[rng.gen_range(0..3)] as char).to_ascii_uppercase()).collect());
    for _ in 0..after {
        let len = rng.gen_range(1..=7);
        words.push(word(rng, len));
    }
    (words.join(" "), before)
}

// ---------------------------------------------------------------------------
// Frequency models

/// Method D bits for `symbol` given raw counts over `domain`.
pub fn method_d_bits(counts: &BTreeMap<u32, u64>, domain_size: u64, symbol: u32) -> f64 {
    let n: u64 = counts.values().sum();
    if n == 0 {
        return (domain_size as f64).log2();
    }
    let c = counts.get(&symbol).copied().unwrap_or(0);
    if c > 0 {
        return -((2 * c - 1) as f64 / (2 * n) as f64).log2();
    }
    let d = counts.values().filter(|&&v| v > 0).count() as f64;
    let escape = d / (2 * n) as f64;
    let unseen = domain_size as f64 - d;
    -(escape / unseen).log2()
}

// ---------------------------------------------------------------------------
// Text model

/// Per-byte costs of `doc` under order-`order` PPM with method D, recomputed
/// from scratch at every position by scanning the raw history: each earlier
/// document in `history` in full, then the prefix of `doc` coded so far.
/// Contexts never cross document boundaries.
pub fn ppm_oracle_costs(history: &[&[u8]], doc: &[u8], order: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(doc.len());
    for i in 0..doc.len() {
        let symbol = doc[i];
        let mut bits = 0.0;
        let mut found = false;
        for k in (0..=order.min(i)).rev() {
            let context = &doc[i - k..i];
            let mut counts = [0u64; 256];
            let mut tally = |text: &[u8]| {
                for j in k..text.len() {
                    if &text[j - k..j] == context {
                        counts[text[j] as usize] += 1;
                    }
                }
            };
            for h in history {
                tally(h);
            }
            tally(&doc[..i]);
            let n: u64 = counts.iter().sum();
            if n == 0 {
                continue;
            }
            let c = counts[symbol as usize];
            if c > 0 {
                bits -= ((2 * c - 1) as f64 / (2 * n) as f64).log2();
                found = true;
                break;
            }
            let d = counts.iter().filter(|&&v| v > 0).count() as f64;
            bits -= (d / (2 * n) as f64).log2();
        }
        if !found {
            bits += 8.0;
        }
        out.push(bits);
    }
    out
}

// ---------------------------------------------------------------------------
// Longest common subsequence

pub fn is_subsequence(needle: &[u8], hay: &[u8]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|c| it.any(|h| h == c))
}

/// Length of the longest subsequence of `a` that is also one of `b`, found by
/// trying every subsequence of `a`.
pub fn lcs_brute(a: &[u8], b: &[u8]) -> usize {
    let mut best = 0;
    for mask in 0u32..(1 << a.len()) {
        let ones = mask.count_ones() as usize;
        if ones <= best {
            continue;
        }
        let sub: Vec<u8> = (0..a.len()).filter(|i| mask & (1 << i) != 0).map(|i| a[i]).collect();
        if is_subsequence(&sub, b) {
            best = ones;
        }
    }
    best
}
