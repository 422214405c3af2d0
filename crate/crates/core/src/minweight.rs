//! Exact minimum weight, weight distribution and fixed-weight codeword
//! enumeration.
//!
//! Binary codes are walked in Gray-code order over the information vectors:
//! step `t` XORs generator row `trailing_zeros(t)` into a running codeword, so
//! each codeword costs one row XOR and one popcount. The walk over `2^k`
//! steps is split into `2^g` contiguous sub-walks that run on the current
//! rayon pool and are merged in order, so results never depend on the thread
//! count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{words_for, BitVec};
use crate::code::LinearCode;
use crate::error::{Error, Result};

/// Largest dimension accepted for binary exhaustive enumeration.
pub const MAX_BINARY_DIMENSION: usize = 30;
/// Largest dimension accepted for enumeration over GF(q), q >= 3.
pub const MAX_NONBINARY_DIMENSION: usize = 12;

/// Number of codewords of each weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        WeightDistribution { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight that occurs.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    /// Nonzero entries as a weight -> count map.
    pub fn nonzero(&self) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }
}

/// Outcome of a minimum-weight computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinWeight {
    /// The exact minimum weight.
    Exact(usize),
    /// A nonzero codeword of weight below this threshold exists; the walk
    /// stopped early.
    Below(usize),
}

impl MinWeight {
    pub fn exact(self) -> Option<usize> {
        match self {
            MinWeight::Exact(d) => Some(d),
            MinWeight::Below(_) => None,
        }
    }
}

/// Generator rows flattened into `k` blocks of `words` u64s.
struct Packed {
    n: usize,
    k: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Packed {
    fn new(code: &LinearCode) -> Result<Self> {
        if !code.field().is_binary() {
            return Err(Error::UnsupportedField(code.field().p()));
        }
        if code.k() > MAX_BINARY_DIMENSION {
            return Err(Error::Capacity {
                what: format!("exhaustive enumeration of dimension {}", code.k()),
                limit: MAX_BINARY_DIMENSION,
            });
        }
        let words = words_for(code.n()).max(1);
        let mut rows = Vec::with_capacity(code.k() * words);
        for r in code.generator().rows() {
            let b = r.as_bits().expect("binary storage");
            rows.extend_from_slice(b.words());
            rows.resize(rows.len() + words - b.words().len(), 0);
        }
        Ok(Packed {
            n: code.n(),
            k: code.k(),
            words,
            rows,
        })
    }

    /// Sub-walk boundaries covering `0..2^k`.
    fn chunks(&self) -> Vec<(u64, u64)> {
        let threads = rayon::current_num_threads();
        let g = if threads <= 1 {
            0
        } else {
            let want = (threads * 4).next_power_of_two().trailing_zeros() as usize;
            want.min(self.k)
        };
        let size = 1u64 << (self.k - g);
        (0..1u64 << g).map(|c| (c * size, (c + 1) * size)).collect()
    }

    /// Visits the codewords for Gray indices `start..end`; `visit` returns
    /// `false` to stop.
    fn walk<F: FnMut(&[u64], u32) -> bool>(&self, start: u64, end: u64, visit: F) {
        match self.words {
            1 => self.walk_fixed::<1, F>(start, end, visit),
            2 => self.walk_fixed::<2, F>(start, end, visit),
            3 => self.walk_fixed::<3, F>(start, end, visit),
            4 => self.walk_fixed::<4, F>(start, end, visit),
            _ => self.walk_dyn(start, end, visit),
        }
    }

    #[inline(always)]
    fn walk_fixed<const W: usize, F: FnMut(&[u64], u32) -> bool>(&self, start: u64, end: u64, mut visit: F) {
        let rows: Vec<[u64; W]> = self
            .rows
            .chunks_exact(W)
            .map(|c| c.try_into().expect("row width"))
            .collect();
        let mut cw = [0u64; W];
        let gray = start ^ (start >> 1);
        for (i, row) in rows.iter().enumerate() {
            if (gray >> i) & 1 == 1 {
                for w in 0..W {
                    cw[w] ^= row[w];
                }
            }
        }
        let weight = |cw: &[u64; W]| cw.iter().map(|x| x.count_ones()).sum::<u32>();
        if !visit(&cw, weight(&cw)) {
            return;
        }
        for t in start + 1..end {
            let row = &rows[t.trailing_zeros() as usize];
            for w in 0..W {
                cw[w] ^= row[w];
            }
            if !visit(&cw, weight(&cw)) {
                return;
            }
        }
    }

    fn walk_dyn<F: FnMut(&[u64], u32) -> bool>(&self, start: u64, end: u64, mut visit: F) {
        let w = self.words;
        let mut cw = vec![0u64; w];
        let gray = start ^ (start >> 1);
        for i in 0..self.k {
            if (gray >> i) & 1 == 1 {
                for (c, r) in cw.iter_mut().zip(&self.rows[i * w..(i + 1) * w]) {
                    *c ^= r;
                }
            }
        }
        let weight = |cw: &[u64]| cw.iter().map(|x| x.count_ones()).sum::<u32>();
        if !visit(&cw, weight(&cw)) {
            return;
        }
        for t in start + 1..end {
            let i = t.trailing_zeros() as usize;
            for (c, r) in cw.iter_mut().zip(&self.rows[i * w..(i + 1) * w]) {
                *c ^= r;
            }
            if !visit(&cw, weight(&cw)) {
                return;
            }
        }
    }
}

/// Minimum nonzero weight. With `abort_below = Some(t)` the walk stops at the
/// first nonzero codeword of weight `< t` and reports [`MinWeight::Below`].
pub fn min_weight(code: &LinearCode, abort_below: Option<usize>) -> Result<MinWeight> {
    if code.k() == 0 {
        return Err(Error::Precondition("the zero code has no minimum weight".into()));
    }
    if !code.field().is_binary() {
        let dist = weight_distribution(code)?;
        let d = dist.min_weight().expect("k > 0");
        return Ok(match abort_below {
            Some(t) if d < t => MinWeight::Below(t),
            _ => MinWeight::Exact(d),
        });
    }
    let packed = Packed::new(code)?;
    let threshold = abort_below.unwrap_or(0) as u32;
    let stop = AtomicBool::new(false);
    let best = packed
        .chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut best = u32::MAX;
            let mut seen = 0u64;
            packed.walk(s, e, |_, w| {
                if w > 0 && w < best {
                    best = w;
                    if w < threshold {
                        stop.store(true, Ordering::Relaxed);
                        return false;
                    }
                }
                seen += 1;
                seen & 0xffff != 0 || !stop.load(Ordering::Relaxed)
            });
            best
        })
        .min()
        .unwrap_or(u32::MAX);
    if stop.load(Ordering::Relaxed) || best < threshold {
        return Ok(MinWeight::Below(threshold as usize));
    }
    Ok(MinWeight::Exact(best as usize))
}

/// Exact weight distribution.
pub fn weight_distribution(code: &LinearCode) -> Result<WeightDistribution> {
    if code.field().is_binary() {
        return Ok(scan(code, None)?.0);
    }
    if code.k() > MAX_NONBINARY_DIMENSION {
        return Err(Error::Capacity {
            what: format!("GF({}) enumeration of dimension {}", code.field().p(), code.k()),
            limit: MAX_NONBINARY_DIMENSION,
        });
    }
    let mut counts = vec![0u64; code.n() + 1];
    for c in code.codewords()? {
        counts[c.weight()] += 1;
    }
    Ok(WeightDistribution { counts })
}

/// All binary codewords of weight exactly `w`, in Gray-walk order.
pub fn codewords_of_weight(code: &LinearCode, w: usize) -> Result<Vec<BitVec>> {
    Ok(scan(code, Some(w))?.1)
}

/// One pass computing the distribution and, optionally, collecting the
/// codewords of one weight.
pub fn scan(code: &LinearCode, collect: Option<usize>) -> Result<(WeightDistribution, Vec<BitVec>)> {
    let packed = Packed::new(code)?;
    let n = packed.n;
    let target = collect.map(|w| w as u32);
    let parts: Vec<(Vec<u64>, Vec<BitVec>)> = packed
        .chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut counts = vec![0u64; n + 1];
            let mut found = Vec::new();
            packed.walk(s, e, |cw, w| {
                counts[w as usize] += 1;
                if Some(w) == target {
                    found.push(BitVec::from_words(n, cw.to_vec()));
                }
                true
            });
            (counts, found)
        })
        .collect();
    let mut counts = vec![0u64; n + 1];
    let mut found = Vec::new();
    for (c, f) in parts {
        for (a, b) in counts.iter_mut().zip(c) {
            *a += b;
        }
        found.extend(f);
    }
    Ok((WeightDistribution { counts }, found))
}
