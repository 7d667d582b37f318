//! The compression test: a candidate is an acronym when its cheapest code
//! under the trained component models is small compared with what the text
//! model pays for the same letters.

use std::fmt;
use std::str::FromStr;

use crate::codec::{enumerate_codes, realize, AcronymCode, DefinitionSpan};
use crate::models::{BitCost, ComponentModels, ModelError, TrainedModels};
use crate::text::{find_candidates, tokenize, CandidateSite};

/// Costs closer than this are a tie.
pub const TIE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScoringMode {
    /// `acronym_bits / ppm_bits`
    #[default]
    Ratio,
    /// `acronym_bits - ppm_bits`, with the threshold read as a bit budget.
    Difference,
}

impl ScoringMode {
    pub fn score(self, acronym_bits: BitCost, ppm_bits: BitCost) -> f64 {
        match self {
            ScoringMode::Ratio => acronym_bits.bits() / ppm_bits.bits(),
            ScoringMode::Difference => acronym_bits.bits() - ppm_bits.bits(),
        }
    }
}

impl FromStr for ScoringMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ratio" => Ok(ScoringMode::Ratio),
            "difference" | "diff" => Ok(ScoringMode::Difference),
            other => Err(format!("unknown scoring mode {other:?} (expected ratio or difference)")),
        }
    }
}

impl fmt::Display for ScoringMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoringMode::Ratio => "ratio",
            ScoringMode::Difference => "difference",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractorConfig {
    pub threshold: f64,
    pub mode: ScoringMode,
    pub min_length: usize,
}

impl Default for ExtractorConfig {
    fn default() -> Self {
        ExtractorConfig { threshold: 0.2, mode: ScoringMode::Ratio, min_length: 2 }
    }
}

impl ExtractorConfig {
    pub fn with_threshold(threshold: f64) -> Self {
        ExtractorConfig { threshold, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.threshold.is_nan() || self.threshold < 0.0 {
            return Err(format!("threshold must be non-negative, got {}", self.threshold));
        }
        if self.min_length < 2 {
            return Err(format!("minimum acronym length is 2, got {}", self.min_length));
        }
        Ok(())
    }
}

/// Cheapest code for a site, with any codes tying it.
#[derive(Debug, Clone, PartialEq)]
pub struct BestCode {
    pub code: AcronymCode,
    pub cost: BitCost,
    /// Other codes within [`TIE_EPSILON`] of `cost`, in canonical order.
    pub ties: Vec<AcronymCode>,
}

pub fn best_code(site: &CandidateSite, models: &ComponentModels) -> Result<Option<BestCode>, ModelError> {
    let mut scored = Vec::new();
    for code in enumerate_codes(site) {
        let cost = models.code_cost(&code)?;
        scored.push((code, cost));
    }
    let Some(min) = scored.iter().map(|(_, c)| c.bits()).reduce(f64::min) else {
        return Ok(None);
    };
    // enumerate_codes yields canonical order, so the first tied code is primary.
    let mut tied = scored.into_iter().filter(|(_, c)| c.bits() - min <= TIE_EPSILON).map(|(code, _)| code);
    let code = tied.next().expect("minimum exists");
    Ok(Some(BestCode { cost: BitCost::new(min), code, ties: tied.collect() }))
}

/// A candidate with its costs, kept whether accepted or not so a sweep can
/// re-threshold without re-costing.
#[derive(Debug, Clone)]
pub struct ScoredCandidate {
    pub site: CandidateSite,
    pub best: Option<BestCode>,
    pub definition: Option<DefinitionSpan>,
    pub ppm_bits: BitCost,
    /// `None` when no legal code exists.
    pub score: Option<f64>,
}

impl ScoredCandidate {
    pub fn offset(&self) -> usize {
        self.site.acronym.start()
    }

    pub fn acronym(&self) -> &str {
        self.site.acronym_text()
    }

    pub fn accepted_at(&self, threshold: f64) -> bool {
        self.score.is_some_and(|s| s <= threshold)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    NoCode,
    OverThreshold,
    TooShort,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub acronym: String,
    pub site: CandidateSite,
    pub code: AcronymCode,
    pub ties: Vec<AcronymCode>,
    pub definition: DefinitionSpan,
    pub acronym_bits: BitCost,
    pub ppm_bits: BitCost,
    pub score: f64,
}

impl Extraction {
    pub fn offset(&self) -> usize {
        self.site.acronym.start()
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    Accept(Extraction),
    Reject { reason: RejectReason, score: Option<f64> },
}

fn score_site(
    site: CandidateSite,
    models: &ComponentModels,
    ppm_bits: BitCost,
    mode: ScoringMode,
) -> Result<ScoredCandidate, ModelError> {
    let best = best_code(&site, models)?;
    let definition = best.as_ref().map(|b| realize(&b.code, &site).expect("enumerated codes realize"));
    let score = best.as_ref().map(|b| mode.score(b.cost, ppm_bits));
    Ok(ScoredCandidate { site, best, definition, ppm_bits, score })
}

fn decide(candidate: ScoredCandidate, config: &ExtractorConfig) -> Decision {
    if candidate.acronym().len() < config.min_length {
        return Decision::Reject { reason: RejectReason::TooShort, score: candidate.score };
    }
    let (Some(best), Some(definition), Some(score)) = (candidate.best, candidate.definition, candidate.score) else {
        return Decision::Reject { reason: RejectReason::NoCode, score: None };
    };
    if score > config.threshold {
        return Decision::Reject { reason: RejectReason::OverThreshold, score: Some(score) };
    }
    Decision::Accept(Extraction {
        acronym: candidate.site.acronym_text().to_owned(),
        site: candidate.site,
        code: best.code,
        ties: best.ties,
        definition,
        acronym_bits: best.cost,
        ppm_bits: candidate.ppm_bits,
        score,
    })
}

/// Accepts iff a code exists and its score is at most the threshold.
pub fn classify(
    site: &CandidateSite,
    models: &ComponentModels,
    ppm_bits: BitCost,
    config: &ExtractorConfig,
) -> Result<Decision, ModelError> {
    let candidate = score_site(site.clone(), models, ppm_bits, config.mode)?;
    Ok(decide(candidate, config))
}

/// Scores every candidate in a document in one forward pass of a private
/// copy of the text model.
pub fn score_document(
    document: &[u8],
    models: &TrainedModels,
    mode: ScoringMode,
) -> Result<Vec<ScoredCandidate>, ModelError> {
    let stream = tokenize(document);
    let sites = find_candidates(&stream);
    if sites.is_empty() {
        return Ok(Vec::new());
    }
    let mut ppm = models.ppm.clone();
    let costs = ppm.document_costs(document);
    sites
        .into_iter()
        .map(|site| {
            let ppm_bits = BitCost::new(costs[site.acronym.span.clone()].iter().sum());
            score_site(site, &models.components, ppm_bits, mode)
        })
        .collect()
}

pub fn extract_document(
    document: &[u8],
    models: &TrainedModels,
    config: &ExtractorConfig,
) -> Result<Vec<Extraction>, ModelError> {
    Ok(score_document(document, models, config.mode)?
        .into_iter()
        .filter_map(|c| match decide(c, config) {
            Decision::Accept(e) => Some(e),
            Decision::Reject { .. } => None,
        })
        .collect())
}

/// Keeps only the first extraction of each acronym.
pub fn dedupe(extractions: Vec<Extraction>) -> Vec<Extraction> {
    let mut seen = std::collections::HashSet::new();
    extractions.into_iter().filter(|e| seen.insert(e.acronym.clone())).collect()
}
