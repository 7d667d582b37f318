mod common;

use std::collections::{BTreeMap, BTreeSet};

use acromine::codec::code_to_display;
use acromine::models::train_component_models;
use acromine::{enumerate_codes, find_candidates, realize, tokenize, AcronymCode, CandidateSite};
use common::{brute_force_codes, phrase_offsets, random_site_text, GOLDEN_CODES, UNREACHABLE};
use proptest::prelude::*;
use rand::SeedableRng;

fn site(context: &str, acronym: &str) -> CandidateSite {
    let stream = tokenize(context);
    let index = stream.texts().position(|t| t == acronym).unwrap();
    CandidateSite::at(&stream, index).unwrap()
}

fn golden_codes() -> Vec<AcronymCode> {
    GOLDEN_CODES.iter().map(|(_, _, c)| c.parse().unwrap()).collect()
}

#[test]
fn every_printed_code_is_enumerated_and_displays_identically() {
    for (acronym, context, printed) in GOLDEN_CODES {
        let s = site(context, acronym);
        let codes = enumerate_codes(&s);
        let found = codes.iter().find(|c| code_to_display(c) == printed);
        assert!(found.is_some(), "{acronym}: {printed} not among {codes:?}");
        let def = realize(found.unwrap(), &s).unwrap();
        assert_eq!(def.word_indices.len(), found.unwrap().word_count());
    }
}

#[test]
fn printed_expansions_are_never_realized() {
    for (acronym, context, expansion) in UNREACHABLE {
        let span = phrase_offsets(context, expansion);
        for s in find_candidates(&tokenize(context)) {
            for code in enumerate_codes(&s) {
                let def = realize(&code, &s).unwrap();
                assert_ne!(def.offsets(), span, "{acronym}: {code} realizes {expansion:?}");
            }
        }
    }
}

#[test]
fn seeded_sites_match_brute_force() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut nonempty = 0;
    for _ in 0..1000 {
        let (text, index) = random_site_text(&mut rng, 8);
        let s = CandidateSite::at(&tokenize(&text), index).unwrap();
        let fast: BTreeSet<AcronymCode> = enumerate_codes(&s).into_iter().collect();
        assert_eq!(fast, brute_force_codes(&s), "{text}");
        nonempty += usize::from(!fast.is_empty());
    }
    assert!(nonempty > 300, "only {nonempty} sites had codes");
}

#[test]
fn hand_tallied_letter_counts() {
    let models = train_component_models(&golden_codes()).unwrap();
    // Letter counts across all thirteen codes, counted by hand from the table.
    let expected: BTreeMap<u32, u64> = [(1, 30), (2, 1), (3, 3), (4, 1)].into();
    assert_eq!(models.letter_count.counts(), &expected);
    let words: BTreeMap<u32, u64> = [(2, 7), (3, 5), (6, 1)].into();
    assert_eq!(models.word_count.counts(), &words);
    let directions: BTreeMap<u32, u64> = [(0, 10), (1, 3)].into();
    assert_eq!(models.direction.counts(), &directions);
    let first: BTreeMap<u32, u64> = [(2, 4), (3, 1), (4, 3), (6, 1), (7, 2), (8, 1), (11, 1)].into();
    assert_eq!(models.first_distance.counts(), &first);
}

#[test]
fn frequent_distance_is_cheaper_than_a_singleton() {
    let models = train_component_models(&golden_codes()).unwrap();
    let near = models.code_cost(&"- 2 <1> <1,1>".parse().unwrap()).unwrap().bits();
    let far = models.code_cost(&"- 13 <1> <1,1>".parse().unwrap()).unwrap().bits();
    // Only the first-distance term differs. Distance 2: seen 4 times in 13,
    // p = (2*4 - 1)/26. Distance 13: escape with 7 distinct seen, p = 7/26,
    // then one of the 9 unseen distances.
    let two = -(7.0f64 / 26.0).log2();
    let thirteen = -(7.0f64 / 26.0).log2() + 9f64.log2();
    let expected_gap = thirteen - two;
    assert!(far > near);
    assert!((far - near - expected_gap).abs() < 1e-9, "{near} {far}");
}

fn word() -> impl Strategy<Value = String> {
    "[abcABC]{1,6}"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn enumeration_equals_exhaustion(
        before in prop::collection::vec(word(), 0..=8),
        acronym in "[ABC]{2,5}",
        after in prop::collection::vec(word(), 0..=8),
    ) {
        let mut words = before.clone();
        words.push(acronym);
        words.extend(after);
        let s = CandidateSite::at(&tokenize(words.join(" ")), before.len()).unwrap();
        let fast: BTreeSet<AcronymCode> = enumerate_codes(&s).into_iter().collect();
        prop_assert_eq!(fast, brute_force_codes(&s));
    }

    #[test]
    fn realized_spans_spell_the_acronym(
        before in prop::collection::vec(word(), 0..=10),
        acronym in "[ABC]{2,5}",
        after in prop::collection::vec(word(), 0..=10),
    ) {
        let mut words = before.clone();
        words.push(acronym.clone());
        words.extend(after);
        let stream = tokenize(words.join(" "));
        let s = CandidateSite::at(&stream, before.len()).unwrap();
        let codes = enumerate_codes(&s);
        prop_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for code in codes {
            prop_assert!(code.letter_counts.iter().all(|&n| (1..=6).contains(&n)));
            let def = realize(&code, &s).unwrap();
            let spelled: String = def
                .word_indices
                .iter()
                .zip(&code.letter_counts)
                .map(|(&i, &n)| stream.get(i).unwrap().text[..n].to_ascii_uppercase())
                .collect();
            prop_assert_eq!(&spelled, &acronym);
            prop_assert!(!def.word_indices.contains(&s.token_index));
            let parsed: AcronymCode = code.to_string().parse().unwrap();
            prop_assert_eq!(parsed, code);
        }
    }
}
