//! Binary arithmetic coder over 64-bit registers.
//!
//! Each coding step narrows the current interval to `[low, high) / total`.
//! On finish the encoder emits the shortest bit string whose dyadic interval
//! lies wholly inside the final interval, so any continuation decodes the same
//! way and the output never exceeds the information content by two bits.

use std::fmt;

use super::ModelError;

const HALF: u64 = 1 << 63;
const QUARTER: u64 = 1 << 62;
const THREE_QUARTERS: u64 = HALF + QUARTER;

/// One coding step: the sub-range `[low, high)` out of `total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub low: u64,
    pub high: u64,
    pub total: u64,
}

impl Interval {
    pub fn new(low: u64, high: u64, total: u64) -> Self {
        debug_assert!(low < high && high <= total, "{low}..{high}/{total}");
        Interval { low, high, total }
    }

    pub fn bits(&self) -> f64 {
        -((self.high - self.low) as f64 / self.total as f64).log2()
    }
}

/// A packed sequence of bits, most significant bit of each byte first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bytes(bytes: Vec<u8>, len: usize) -> Self {
        assert!(len <= bytes.len() * 8);
        BitString { bytes, len }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bytes with the final partial byte zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn truncated(&self, len: usize) -> BitString {
        let mut out = BitString::new();
        for i in 0..len.min(self.len) {
            out.push(self.get(i).unwrap());
        }
        out
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (0..self.len).map(|i| if self.get(i).unwrap() { '1' } else { '0' }).collect();
        write!(f, "BitString({bits})")
    }
}

#[derive(Debug, Clone)]
pub struct Encoder {
    low: u64,
    high: u64,
    pending: u64,
    out: BitString,
}

impl Default for Encoder {
    fn default() -> Self {
        Encoder { low: 0, high: u64::MAX, pending: 0, out: BitString::new() }
    }
}

impl Encoder {
    pub fn new() -> Self {
        Self::default()
    }

    fn emit(&mut self, bit: bool) {
        self.out.push(bit);
        for _ in 0..self.pending {
            self.out.push(!bit);
        }
        self.pending = 0;
    }

    pub fn encode(&mut self, step: Interval) {
        let range = (self.high - self.low) as u128 + 1;
        let total = step.total as u128;
        self.high = self.low + (range * step.high as u128 / total - 1) as u64;
        self.low += (range * step.low as u128 / total) as u64;
        loop {
            if self.high < HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTERS {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
        }
    }

    pub fn finish(mut self) -> BitString {
        let low = self.low as u128;
        let end = self.high as u128 + 1;
        // Pending underflow bits need at least one bit to resolve them.
        let min_k = if self.pending > 0 { 1 } else { 0 };
        for k in min_k..=64u32 {
            let size = 1u128 << (64 - k);
            let m = low.div_ceil(size);
            if (m + 1) * size <= end {
                for j in (0..k).rev() {
                    let bit = (m >> j) & 1 == 1;
                    if j == k - 1 {
                        self.emit(bit);
                    } else {
                        self.out.push(bit);
                    }
                }
                break;
            }
        }
        self.out
    }
}

#[derive(Debug)]
pub struct Decoder<'a> {
    bits: &'a BitString,
    next: usize,
    low: u64,
    high: u64,
    value: u64,
}

impl<'a> Decoder<'a> {
    pub fn new(bits: &'a BitString) -> Self {
        let mut d = Decoder { bits, next: 0, low: 0, high: u64::MAX, value: 0 };
        for _ in 0..64 {
            d.value = (d.value << 1) | d.read_bit();
        }
        d
    }

    fn read_bit(&mut self) -> u64 {
        let bit = self.bits.get(self.next).unwrap_or(false);
        self.next += 1;
        bit as u64
    }

    /// The cumulative count in `0..total` the next step falls on.
    pub fn target(&self, total: u64) -> Result<u64, ModelError> {
        let range = (self.high - self.low) as u128 + 1;
        let offset = (self.value - self.low) as u128;
        let t = ((offset + 1) * total as u128 - 1) / range;
        u64::try_from(t).ok().filter(|&t| t < total).ok_or(ModelError::DecodeCorrupt("target outside the coding range"))
    }

    /// Applies the step chosen by the caller from [`Decoder::target`].
    pub fn consume(&mut self, step: Interval) {
        let range = (self.high - self.low) as u128 + 1;
        let total = step.total as u128;
        self.high = self.low + (range * step.high as u128 / total - 1) as u64;
        self.low += (range * step.low as u128 / total) as u64;
        loop {
            if self.high < HALF {
            } else if self.low >= HALF {
                self.low -= HALF;
                self.high -= HALF;
                self.value -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTERS {
                self.low -= QUARTER;
                self.high -= QUARTER;
                self.value -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
            self.value = (self.value << 1) | self.read_bit();
        }
    }
}
