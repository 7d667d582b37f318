//! Order-5 PPM over bytes with escape method D.
//!
//! Contexts live in a trie of every string of up to six bytes seen so far;
//! the children of a context node are the bytes that followed it, with their
//! counts. Coding walks from the longest available context down to the empty
//! one, escaping whenever the byte is new there, and bottoms out in a uniform
//! model over all 256 bytes. No exclusion is applied. Every context from the
//! empty one up to the longest is updated after each byte.

use std::ops::Range;

use super::arith::{BitString, Decoder, Encoder, Interval};
use super::{BitCost, ModelError};

pub const PPM_ORDER: usize = 5;

const NONE: u32 = u32::MAX;
const ROOT: u32 = 0;

#[derive(Debug, Clone, Copy)]
struct Node {
    symbol: u8,
    count: u32,
    first_child: u32,
    next_sibling: u32,
    /// Sum of child counts: the `n` of this context.
    total: u32,
    /// Number of children: the `d` of this context.
    distinct: u32,
}

impl Node {
    fn new(symbol: u8) -> Self {
        Node { symbol, count: 0, first_child: NONE, next_sibling: NONE, total: 0, distinct: 0 }
    }
}

/// Adaptive PPM model plus the current coding history.
#[derive(Debug, Clone)]
pub struct PpmModel {
    nodes: Vec<Node>,
    max_order: usize,
    /// `contexts[k]` is the node for the last `k` bytes coded.
    contexts: Vec<u32>,
}

impl Default for PpmModel {
    fn default() -> Self {
        Self::new(PPM_ORDER)
    }
}

impl PpmModel {
    pub fn new(max_order: usize) -> Self {
        PpmModel { nodes: vec![Node::new(0)], max_order, contexts: vec![ROOT] }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Forgets the coding history (not the statistics); used at document starts.
    pub fn reset_history(&mut self) {
        self.contexts.clear();
        self.contexts.push(ROOT);
    }

    fn child(&self, node: u32, symbol: u8) -> Option<u32> {
        let mut c = self.nodes[node as usize].first_child;
        while c != NONE {
            let n = &self.nodes[c as usize];
            if n.symbol == symbol {
                return Some(c);
            }
            c = n.next_sibling;
        }
        None
    }

    fn children(&self, node: u32) -> impl Iterator<Item = &Node> {
        let mut c = self.nodes[node as usize].first_child;
        std::iter::from_fn(move || {
            (c != NONE).then(|| {
                let n = &self.nodes[c as usize];
                c = n.next_sibling;
                n
            })
        })
    }

    fn child_or_insert(&mut self, node: u32, symbol: u8) -> u32 {
        if let Some(c) = self.child(node, symbol) {
            return c;
        }
        let idx = self.nodes.len() as u32;
        let mut fresh = Node::new(symbol);
        let parent = &mut self.nodes[node as usize];
        fresh.next_sibling = parent.first_child;
        parent.first_child = idx;
        parent.distinct += 1;
        self.nodes.push(fresh);
        idx
    }

    /// Information content of `symbol` in the current history.
    pub fn byte_cost(&self, symbol: u8) -> f64 {
        let mut bits = 0.0;
        for &ctx in self.contexts.iter().rev() {
            let node = &self.nodes[ctx as usize];
            if node.total == 0 {
                continue;
            }
            let two_n = 2.0 * node.total as f64;
            match self.child(ctx, symbol) {
                Some(c) => {
                    let count = self.nodes[c as usize].count as f64;
                    return bits - ((2.0 * count - 1.0) / two_n).log2();
                }
                None => bits -= (node.distinct as f64 / two_n).log2(),
            }
        }
        bits + 8.0
    }

    /// Records `symbol` in every current context and extends the history.
    pub fn update(&mut self, symbol: u8) {
        // Longest first, so contexts[k] is read before contexts[k + 1] is
        // overwritten with its extension.
        for k in (0..self.contexts.len()).rev() {
            let ctx = self.contexts[k];
            let child = self.child_or_insert(ctx, symbol);
            self.nodes[child as usize].count += 1;
            self.nodes[ctx as usize].total += 1;
            if k + 1 < self.contexts.len() {
                self.contexts[k + 1] = child;
            } else if k < self.max_order {
                self.contexts.push(child);
            }
        }
        self.contexts[0] = ROOT;
    }

    /// Cost of `symbol`, then update.
    pub fn advance(&mut self, symbol: u8) -> f64 {
        let bits = self.byte_cost(symbol);
        self.update(symbol);
        bits
    }

    /// Adds a document to the statistics, starting from an empty history.
    pub fn train(&mut self, bytes: &[u8]) {
        self.reset_history();
        for &b in bytes {
            self.update(b);
        }
        self.reset_history();
    }

    /// Per-byte costs of a document coded adaptively from an empty history.
    pub fn document_costs(&mut self, bytes: &[u8]) -> Vec<f64> {
        self.reset_history();
        bytes.iter().map(|&b| self.advance(b)).collect()
    }

    /// Probabilities of every child of the node for `context` plus the
    /// escape, or `None` for an unseen or empty context.
    pub fn context_distribution(&self, context: &[u8]) -> Option<(Vec<(u8, f64)>, f64)> {
        let mut node = ROOT;
        for &b in context {
            node = self.child(node, b)?;
        }
        let n = &self.nodes[node as usize];
        if n.total == 0 {
            return None;
        }
        let two_n = 2.0 * n.total as f64;
        let probs = self.children(node).map(|c| (c.symbol, (2.0 * c.count as f64 - 1.0) / two_n)).collect();
        Some((probs, n.distinct as f64 / two_n))
    }

    fn encode_byte(&self, symbol: u8, enc: &mut Encoder) {
        for &ctx in self.contexts.iter().rev() {
            let node = &self.nodes[ctx as usize];
            if node.total == 0 {
                continue;
            }
            let total = 2 * node.total as u64;
            let mut cum = 0;
            for c in self.children(ctx) {
                let freq = 2 * c.count as u64 - 1;
                if c.symbol == symbol {
                    enc.encode(Interval::new(cum, cum + freq, total));
                    return;
                }
                cum += freq;
            }
            enc.encode(Interval::new(cum, total, total));
        }
        enc.encode(Interval::new(symbol as u64, symbol as u64 + 1, 256));
    }

    fn decode_byte(&self, dec: &mut Decoder<'_>) -> Result<u8, ModelError> {
        for &ctx in self.contexts.iter().rev() {
            let node = &self.nodes[ctx as usize];
            if node.total == 0 {
                continue;
            }
            let total = 2 * node.total as u64;
            let target = dec.target(total)?;
            let mut cum = 0;
            for c in self.children(ctx) {
                let freq = 2 * c.count as u64 - 1;
                if target < cum + freq {
                    dec.consume(Interval::new(cum, cum + freq, total));
                    return Ok(c.symbol);
                }
                cum += freq;
            }
            dec.consume(Interval::new(cum, total, total));
        }
        let symbol = dec.target(256)?;
        dec.consume(Interval::new(symbol, symbol + 1, 256));
        Ok(symbol as u8)
    }

    /// Every `(context, symbol, count)` entry of the trie, sorted.
    pub fn triples(&self) -> Vec<(Vec<u8>, u8, u32)> {
        let mut out = Vec::new();
        let mut stack = vec![(ROOT, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            for (idx, c) in self.child_indices(node) {
                out.push((path.clone(), c.symbol, c.count));
                if path.len() < self.max_order {
                    let mut p = path.clone();
                    p.push(c.symbol);
                    stack.push((idx, p));
                }
            }
        }
        out.sort();
        out
    }

    fn child_indices(&self, node: u32) -> Vec<(u32, Node)> {
        let mut out = Vec::new();
        let mut c = self.nodes[node as usize].first_child;
        while c != NONE {
            let n = self.nodes[c as usize];
            out.push((c, n));
            c = n.next_sibling;
        }
        out
    }

    /// Rebuilds a model from [`PpmModel::triples`] output. Every context must
    /// itself have been recorded before any of its children.
    pub fn from_triples(
        max_order: usize,
        triples: impl IntoIterator<Item = (Vec<u8>, u8, u32)>,
    ) -> Result<Self, ModelError> {
        let mut model = PpmModel::new(max_order);
        for (context, symbol, count) in triples {
            if context.len() > max_order || count == 0 {
                return Err(ModelError::Format("PPM entry outside the model order"));
            }
            let mut node = ROOT;
            for &b in &context {
                node = model.child(node, b).ok_or(ModelError::Format("PPM context without parent"))?;
            }
            let child = model.child_or_insert(node, symbol);
            if model.nodes[child as usize].count != 0 {
                return Err(ModelError::Format("duplicate PPM entry"));
            }
            model.nodes[child as usize].count = count;
            model.nodes[node as usize].total += count;
        }
        Ok(model)
    }
}

/// Bits needed for the bytes in `span`, coding the document adaptively from
/// its start with a private copy of `model`.
pub fn ppm_span_cost(document: &[u8], span: Range<usize>, model: &PpmModel) -> Result<BitCost, ModelError> {
    if span.start > span.end || span.end > document.len() {
        return Err(ModelError::SpanOutOfBounds { start: span.start, end: span.end, len: document.len() });
    }
    let mut model = model.clone();
    model.reset_history();
    let mut bits = 0.0;
    for (i, &b) in document[..span.end].iter().enumerate() {
        let cost = model.advance(b);
        if i >= span.start {
            bits += cost;
        }
    }
    Ok(BitCost::new(bits))
}

/// Total adaptive cost of a whole message from a copy of `model`.
pub fn message_cost(bytes: &[u8], model: &PpmModel) -> BitCost {
    let mut model = model.clone();
    BitCost::new(model.document_costs(bytes).iter().sum())
}

fn encode_all(text: &[u8]) -> BitString {
    let mut model = PpmModel::new(PPM_ORDER);
    let mut enc = Encoder::new();
    for &b in text {
        model.encode_byte(b, &mut enc);
        model.update(b);
    }
    enc.finish()
}

/// Compresses with a fresh order-5 model. Layout: LEB128 byte count, then the
/// arithmetic-coded bits padded to a byte. Empty input gives empty output.
pub fn ppm_compress(text: &[u8]) -> Vec<u8> {
    if text.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut n = text.len() as u64;
    loop {
        let byte = (n & 0x7f) as u8;
        n >>= 7;
        if n == 0 {
            out.push(byte);
            break;
        }
        out.push(byte | 0x80);
    }
    out.extend_from_slice(encode_all(text).as_bytes());
    out
}

pub fn ppm_decompress(payload: &[u8]) -> Result<Vec<u8>, ModelError> {
    if payload.is_empty() {
        return Ok(Vec::new());
    }
    let mut len: u64 = 0;
    let mut header = 0;
    loop {
        let byte = *payload.get(header).ok_or(ModelError::DecodeCorrupt("truncated length"))?;
        if header >= 9 {
            return Err(ModelError::DecodeCorrupt("length overflows"));
        }
        len |= ((byte & 0x7f) as u64) << (7 * header);
        header += 1;
        if byte & 0x80 == 0 {
            break;
        }
    }
    let body = &payload[header..];
    if len == 0 {
        return Err(ModelError::DecodeCorrupt("zero length with a body"));
    }
    let bits = BitString::from_bytes(body.to_vec(), body.len() * 8);
    let mut model = PpmModel::new(PPM_ORDER);
    let mut dec = Decoder::new(&bits);
    let mut out = Vec::with_capacity(len.min(1 << 24) as usize);
    for _ in 0..len {
        let b = model.decode_byte(&mut dec)?;
        model.update(b);
        out.push(b);
    }
    // The encoder output is canonical; anything else was damaged.
    if encode_all(&out).as_bytes() != body {
        return Err(ModelError::DecodeCorrupt("payload is not a canonical encoding"));
    }
    Ok(out)
}
