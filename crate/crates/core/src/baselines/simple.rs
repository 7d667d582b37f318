//! Exact first-letter matching: the acronym must spell the initials of the
//! words immediately before or immediately after it. Parentheses are not
//! tokens, so `Read Only Memory (ROM)` counts as adjacent.

use super::{describe, BaselineMatch};
use crate::text::{find_candidates, tokenize, Direction};

pub fn simple_extract(document: &[u8]) -> Vec<BaselineMatch> {
    let stream = tokenize(document);
    let mut out = Vec::new();
    for site in find_candidates(&stream) {
        let n = site.acronym_text().len();
        let acronym = site.acronym_text().as_bytes();
        for direction in Direction::BOTH {
            let window = site.window(direction);
            if window.len() < n {
                continue;
            }
            // Document order.
            let mut words: Vec<usize> = (1..=n).map(|d| site.stream_index(direction, d).unwrap()).collect();
            if direction == Direction::DefinitionFirst {
                words.reverse();
            }
            let spelled = words
                .iter()
                .zip(acronym)
                .all(|(&i, a)| stream.get(i).unwrap().text.as_bytes()[0].eq_ignore_ascii_case(a));
            if spelled {
                let (code, definition) = describe(&stream, &site, direction, &words, vec![1; n]);
                out.push(BaselineMatch {
                    acronym: site.acronym_text().to_owned(),
                    offset: site.acronym.start(),
                    code,
                    definition,
                    score: 1.0,
                });
                break;
            }
        }
    }
    out
}
