//! Acronym extraction by compression.
//!
//! Each upper-case token is a candidate acronym. Its possible definitions in
//! the surrounding words are written as compact codes, and a candidate is
//! accepted when coding the acronym through its cheapest code is much
//! cheaper than coding the acronym text with a character model trained on
//! ordinary prose.

pub mod baselines;
pub mod codec;
pub mod corpus;
pub mod eval;
pub mod extractor;
pub mod models;
pub mod record;
pub mod text;

pub use codec::{enumerate_codes, realize, AcronymCode, CodecError, DefinitionSpan};
pub use corpus::{load_corpus, split_corpus, Corpus, CorpusError, CorpusSplit, GoldAnnotation};
pub use eval::{EvalReport, Gold, LengthFilter};
pub use extractor::{
    best_code, classify, extract_document, score_document, Decision, Extraction, ExtractorConfig, ScoredCandidate,
    ScoringMode,
};
pub use models::{BitCost, ComponentModels, ModelError, PpmModel, TrainedModels, ZeroOrderModel};
pub use record::Prediction;
pub use text::{find_candidates, tokenize, CandidateSite, Direction, Token, TokenStream};
