//! Statistical models that turn symbols into bit costs.

pub mod arith;
pub mod persist;
pub mod ppm;
pub mod zero_order;

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use thiserror::Error;

use crate::codec::{AcronymCode, MAX_LETTERS_PER_WORD};
use crate::text::{Direction, MAX_CANDIDATE_LEN, WINDOW};
use arith::{BitString, Decoder, Encoder};
pub use ppm::{message_cost, ppm_compress, ppm_decompress, ppm_span_cost, PpmModel, PPM_ORDER};
pub use zero_order::ZeroOrderModel;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("symbol {symbol} outside model domain {lo}..={hi}")]
    OutOfDomain { symbol: u32, lo: u32, hi: u32 },
    #[error("cannot train component models from zero codes")]
    EmptyTraining,
    #[error("corrupt bitstream: {0}")]
    DecodeCorrupt(&'static str),
    #[error("span {start}..{end} outside document of {len} bytes")]
    SpanOutOfBounds { start: usize, end: usize, len: usize },
    #[error("bad model file: {0}")]
    Format(&'static str),
    #[error("unsupported model file version {0}")]
    UnknownVersion(u8),
}

/// Information content in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct BitCost(f64);

impl BitCost {
    pub const ZERO: BitCost = BitCost(0.0);

    pub fn new(bits: f64) -> Self {
        debug_assert!(bits >= 0.0, "negative cost {bits}");
        BitCost(bits)
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl Add for BitCost {
    type Output = BitCost;
    fn add(self, rhs: BitCost) -> BitCost {
        BitCost(self.0 + rhs.0)
    }
}

impl Sum for BitCost {
    fn sum<I: Iterator<Item = BitCost>>(iter: I) -> BitCost {
        iter.fold(BitCost::ZERO, Add::add)
    }
}

impl fmt::Display for BitCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3} bits", self.0)
    }
}

pub fn direction_symbol(direction: Direction) -> u32 {
    match direction {
        Direction::DefinitionFirst => 0,
        Direction::AcronymFirst => 1,
    }
}

/// One zero-order model per code component, plus the number of definition
/// words so a decoder knows where the lists end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComponentModels {
    pub direction: ZeroOrderModel,
    pub first_distance: ZeroOrderModel,
    pub word_offset: ZeroOrderModel,
    pub letter_count: ZeroOrderModel,
    pub word_count: ZeroOrderModel,
}

impl Default for ComponentModels {
    fn default() -> Self {
        ComponentModels {
            direction: ZeroOrderModel::new(0..=1),
            first_distance: ZeroOrderModel::new(1..=WINDOW as u32),
            word_offset: ZeroOrderModel::new(1..=WINDOW as u32),
            letter_count: ZeroOrderModel::new(1..=MAX_LETTERS_PER_WORD as u32),
            word_count: ZeroOrderModel::new(1..=MAX_CANDIDATE_LEN as u32),
        }
    }
}

impl ComponentModels {
    pub fn observe(&mut self, code: &AcronymCode) -> Result<(), ModelError> {
        self.direction.observe(direction_symbol(code.direction))?;
        self.first_distance.observe(code.first_distance as u32)?;
        self.word_count.observe(code.word_count() as u32)?;
        for &off in &code.word_offsets {
            self.word_offset.observe(off as u32)?;
        }
        for &n in &code.letter_counts {
            self.letter_count.observe(n as u32)?;
        }
        Ok(())
    }

    /// The symbol stream for a code, each paired with the model coding it.
    pub fn symbols<'a>(&'a self, code: &AcronymCode) -> Vec<(u32, &'a ZeroOrderModel)> {
        let mut out = vec![
            (direction_symbol(code.direction), &self.direction),
            (code.first_distance as u32, &self.first_distance),
            (code.word_count() as u32, &self.word_count),
        ];
        out.extend(code.word_offsets.iter().map(|&o| (o as u32, &self.word_offset)));
        out.extend(code.letter_counts.iter().map(|&n| (n as u32, &self.letter_count)));
        out
    }

    pub fn code_cost(&self, code: &AcronymCode) -> Result<BitCost, ModelError> {
        self.symbols(code).into_iter().map(|(s, m)| m.symbol_cost(s)).sum()
    }

    pub fn encode_code(&self, code: &AcronymCode) -> Result<BitString, ModelError> {
        let (symbols, models): (Vec<u32>, Vec<&ZeroOrderModel>) = self.symbols(code).into_iter().unzip();
        arithmetic_encode(&symbols, &models)
    }
}

/// Frequency counts over the best codes of hand-marked training acronyms.
pub fn train_component_models<'a>(
    codes: impl IntoIterator<Item = &'a AcronymCode>,
) -> Result<ComponentModels, ModelError> {
    let mut models = ComponentModels::default();
    let mut seen = false;
    for code in codes {
        models.observe(code)?;
        seen = true;
    }
    if seen {
        Ok(models)
    } else {
        Err(ModelError::EmptyTraining)
    }
}

pub fn code_cost(code: &AcronymCode, models: &ComponentModels) -> Result<BitCost, ModelError> {
    models.code_cost(code)
}

/// Arithmetic-codes `symbols[i]` under `models[i]`.
pub fn arithmetic_encode(symbols: &[u32], models: &[&ZeroOrderModel]) -> Result<BitString, ModelError> {
    assert_eq!(symbols.len(), models.len(), "one model per symbol");
    let mut enc = Encoder::new();
    for (&s, m) in symbols.iter().zip(models) {
        for step in m.steps(s)? {
            enc.encode(step);
        }
    }
    Ok(enc.finish())
}

/// Inverse of [`arithmetic_encode`]. Any bitstring other than the canonical
/// encoding of the decoded symbols is rejected as corrupt.
pub fn arithmetic_decode(bits: &BitString, models: &[&ZeroOrderModel]) -> Result<Vec<u32>, ModelError> {
    let mut dec = Decoder::new(bits);
    let symbols = models.iter().map(|m| m.decode(&mut dec)).collect::<Result<Vec<_>, _>>()?;
    if &arithmetic_encode(&symbols, models)? != bits {
        return Err(ModelError::DecodeCorrupt("bitstream is not a canonical encoding"));
    }
    Ok(symbols)
}

/// Everything needed to run the extractor: code models and the primed text
/// model.
#[derive(Debug, Clone)]
pub struct TrainedModels {
    pub components: ComponentModels,
    pub ppm: PpmModel,
}
