//! Context-free frequency models over small integer domains.
//!
//! Probabilities follow escape method D: a symbol seen `c` times out of `n`
//! has probability `(2c - 1) / 2n`, and the escape, which stands for every
//! symbol not yet seen, gets `d / 2n` where `d` is the number of distinct
//! symbols seen. An escaped symbol is then coded uniformly among the unseen
//! members of the domain.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use super::arith::{Decoder, Interval};
use super::{BitCost, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOrderModel {
    counts: BTreeMap<u32, u64>,
    total: u64,
    domain: RangeInclusive<u32>,
}

impl ZeroOrderModel {
    pub fn new(domain: RangeInclusive<u32>) -> Self {
        assert!(!domain.is_empty(), "empty domain");
        ZeroOrderModel { counts: BTreeMap::new(), total: 0, domain }
    }

    pub fn with_counts(
        domain: RangeInclusive<u32>,
        counts: impl IntoIterator<Item = (u32, u64)>,
    ) -> Result<Self, ModelError> {
        let mut model = Self::new(domain);
        for (symbol, count) in counts {
            model.add(symbol, count)?;
        }
        Ok(model)
    }

    pub fn observe(&mut self, symbol: u32) -> Result<(), ModelError> {
        self.add(symbol, 1)
    }

    pub fn add(&mut self, symbol: u32, count: u64) -> Result<(), ModelError> {
        self.check(symbol)?;
        if count > 0 {
            *self.counts.entry(symbol).or_insert(0) += count;
            self.total += count;
        }
        Ok(())
    }

    fn check(&self, symbol: u32) -> Result<(), ModelError> {
        if self.domain.contains(&symbol) {
            Ok(())
        } else {
            Err(ModelError::OutOfDomain { symbol, lo: *self.domain.start(), hi: *self.domain.end() })
        }
    }

    pub fn count(&self, symbol: u32) -> u64 {
        self.counts.get(&symbol).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> u64 {
        self.counts.len() as u64
    }

    pub fn domain(&self) -> &RangeInclusive<u32> {
        &self.domain
    }

    fn domain_size(&self) -> u64 {
        (*self.domain.end() - *self.domain.start()) as u64 + 1
    }

    fn unseen(&self) -> u64 {
        self.domain_size() - self.distinct()
    }

    /// Probability of the escape symbol; 1 for an untrained model.
    pub fn escape_probability(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.distinct() as f64 / (2 * self.total) as f64
        }
    }

    pub fn probability(&self, symbol: u32) -> Result<f64, ModelError> {
        self.check(symbol)?;
        let c = self.count(symbol);
        Ok(if c > 0 {
            (2 * c - 1) as f64 / (2 * self.total) as f64
        } else {
            self.escape_probability() / self.unseen() as f64
        })
    }

    pub fn symbol_cost(&self, symbol: u32) -> Result<BitCost, ModelError> {
        self.check(symbol)?;
        let c = self.count(symbol);
        let bits = if c > 0 {
            -((2 * c - 1) as f64 / (2 * self.total) as f64).log2()
        } else {
            -self.escape_probability().log2() + (self.unseen() as f64).log2()
        };
        Ok(BitCost::new(bits))
    }

    /// Coding steps for `symbol`: one for a seen symbol, escape plus a
    /// uniform choice otherwise.
    pub fn steps(&self, symbol: u32) -> Result<Vec<Interval>, ModelError> {
        self.check(symbol)?;
        let mut steps = Vec::with_capacity(2);
        let total = 2 * self.total;
        let mut cum = 0;
        for (&s, &c) in &self.counts {
            let freq = 2 * c - 1;
            if s == symbol {
                steps.push(Interval::new(cum, cum + freq, total));
                return Ok(steps);
            }
            cum += freq;
        }
        if self.total > 0 {
            steps.push(Interval::new(cum, total, total));
        }
        let rank = self.domain.clone().filter(|s| !self.counts.contains_key(s)).position(|s| s == symbol);
        let rank = rank.expect("symbol in domain and unseen") as u64;
        steps.push(Interval::new(rank, rank + 1, self.unseen()));
        Ok(steps)
    }

    pub fn decode(&self, decoder: &mut Decoder<'_>) -> Result<u32, ModelError> {
        if self.total > 0 {
            let total = 2 * self.total;
            let target = decoder.target(total)?;
            let mut cum = 0;
            for (&s, &c) in &self.counts {
                let freq = 2 * c - 1;
                if target < cum + freq {
                    decoder.consume(Interval::new(cum, cum + freq, total));
                    return Ok(s);
                }
                cum += freq;
            }
            decoder.consume(Interval::new(cum, total, total));
        }
        let unseen = self.unseen();
        if unseen == 0 {
            return Err(ModelError::DecodeCorrupt("escape with no unseen symbols"));
        }
        let rank = decoder.target(unseen)?;
        decoder.consume(Interval::new(rank, rank + 1, unseen));
        Ok(self
            .domain
            .clone()
            .filter(|s| !self.counts.contains_key(s))
            .nth(rank as usize)
            .expect("rank below unseen count"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seen_symbol_half_probability() {
        let m = ZeroOrderModel::with_counts(1..=2, [(1, 1)]).unwrap();
        assert!((m.symbol_cost(1).unwrap().bits() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unseen_symbol_escapes_then_uniform() {
        let m = ZeroOrderModel::with_counts(1..=16, [(1, 1)]).unwrap();
        let expected = -(0.5f64).log2() - (1.0f64 / 15.0).log2();
        assert!((m.symbol_cost(7).unwrap().bits() - expected).abs() < 1e-12);
    }

    #[test]
    fn escape_mass_keeps_costs_positive() {
        let m = ZeroOrderModel::with_counts(1..=1, [(1, 1000)]).unwrap();
        assert!(m.symbol_cost(1).unwrap().bits() > 0.0);
    }

    #[test]
    fn out_of_domain() {
        let m = ZeroOrderModel::new(1..=6);
        assert!(matches!(m.symbol_cost(7), Err(ModelError::OutOfDomain { symbol: 7, .. })));
        assert!(matches!(m.symbol_cost(0), Err(ModelError::OutOfDomain { .. })));
    }

    #[test]
    fn untrained_model_is_uniform() {
        let m = ZeroOrderModel::new(1..=16);
        assert!((m.symbol_cost(3).unwrap().bits() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn probabilities_total_one() {
        let m = ZeroOrderModel::with_counts(1..=16, [(1, 5), (2, 1), (9, 3)]).unwrap();
        let sum: f64 = (1..=16).map(|s| m.probability(s).unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn steps_agree_with_cost() {
        let m = ZeroOrderModel::with_counts(1..=16, [(1, 5), (2, 1), (9, 3)]).unwrap();
        for s in 1..=16 {
            let bits: f64 = m.steps(s).unwrap().iter().map(Interval::bits).sum();
            assert!((bits - m.symbol_cost(s).unwrap().bits()).abs() < 1e-9, "symbol {s}");
        }
    }
}
