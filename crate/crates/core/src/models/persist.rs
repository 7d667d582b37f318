//! Binary model container.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "ACMV1" u8:version
//! 5 x { u32:byte_len  u32:lo u32:hi u32:entries { u32:symbol u64:count }* }
//! u8:ppm_order u64:triples { u8:ctx_len ctx_bytes u8:symbol u32:count }*
//! ```
//!
//! Components appear in the order direction, first distance, word offset,
//! letter count, word count. PPM triples are sorted, so equal models always
//! serialize to equal bytes.

use super::{ComponentModels, ModelError, PpmModel, TrainedModels, ZeroOrderModel};

pub const MAGIC: &[u8; 5] = b"ACMV1";
pub const VERSION: u8 = 1;

pub fn save_models(models: &TrainedModels) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    let c = &models.components;
    for m in [&c.direction, &c.first_distance, &c.word_offset, &c.letter_count, &c.word_count] {
        let body = component_bytes(m);
        out.extend_from_slice(&(body.len() as u32).to_le_bytes());
        out.extend_from_slice(&body);
    }
    out.push(models.ppm.max_order() as u8);
    let triples = models.ppm.triples();
    out.extend_from_slice(&(triples.len() as u64).to_le_bytes());
    for (ctx, symbol, count) in triples {
        out.push(ctx.len() as u8);
        out.extend_from_slice(&ctx);
        out.push(symbol);
        out.extend_from_slice(&count.to_le_bytes());
    }
    out
}

fn component_bytes(m: &ZeroOrderModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&m.domain().start().to_le_bytes());
    out.extend_from_slice(&m.domain().end().to_le_bytes());
    out.extend_from_slice(&(m.counts().len() as u32).to_le_bytes());
    for (&symbol, &count) in m.counts() {
        out.extend_from_slice(&symbol.to_le_bytes());
        out.extend_from_slice(&count.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ModelError> {
        if self.buf.len() < n {
            return Err(ModelError::Format("truncated"));
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, ModelError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, ModelError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, ModelError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn load_models(bytes: &[u8]) -> Result<TrainedModels, ModelError> {
    let mut r = Reader { buf: bytes };
    if r.take(MAGIC.len()).map_err(|_| ModelError::Format("missing magic"))? != MAGIC {
        return Err(ModelError::Format("missing magic"));
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(ModelError::UnknownVersion(version));
    }
    let mut parts = Vec::with_capacity(5);
    for _ in 0..5 {
        let len = r.u32()? as usize;
        let mut body = Reader { buf: r.take(len)? };
        let (lo, hi) = (body.u32()?, body.u32()?);
        if lo > hi {
            return Err(ModelError::Format("empty component domain"));
        }
        let entries = body.u32()?;
        let mut model = ZeroOrderModel::new(lo..=hi);
        for _ in 0..entries {
            let (symbol, count) = (body.u32()?, body.u64()?);
            model.add(symbol, count).map_err(|_| ModelError::Format("component symbol outside domain"))?;
        }
        if !body.buf.is_empty() {
            return Err(ModelError::Format("component length mismatch"));
        }
        parts.push(model);
    }
    let mut parts = parts.into_iter();
    let mut next = || parts.next().unwrap();
    let components = ComponentModels {
        direction: next(),
        first_distance: next(),
        word_offset: next(),
        letter_count: next(),
        word_count: next(),
    };
    let order = r.u8()? as usize;
    let count = r.u64()?;
    let mut triples = Vec::with_capacity(count.min(1 << 20) as usize);
    for _ in 0..count {
        let ctx_len = r.u8()? as usize;
        let ctx = r.take(ctx_len)?.to_vec();
        triples.push((ctx, r.u8()?, r.u32()?));
    }
    if !r.buf.is_empty() {
        return Err(ModelError::Format("trailing bytes"));
    }
    let ppm = PpmModel::from_triples(order, triples)?;
    Ok(TrainedModels { components, ppm })
}
