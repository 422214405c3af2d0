//! Column 4-subset coverage counts and code fingerprints.
//!
//! For the weight-`w` codewords of a binary code, `N_t` counts the 4-subsets
//! of coordinates on which exactly `t` of those codewords are all ones. The
//! sequence is unchanged by column permutations, so two codes with different
//! sequences are inequivalent. Equal sequences prove nothing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::BitVec;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::minweight::{self, WeightDistribution};

/// `(N_1, N_2, ...)` for one code and weight. Trailing zeros are trimmed and
/// `N_0` is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NtSequence {
    pub n: usize,
    pub k: usize,
    pub weight: usize,
    /// `counts[t - 1] = N_t`.
    pub counts: Vec<u64>,
}

impl NtSequence {
    /// `N_t` for `t >= 1`; zero past the stored range.
    pub fn get(&self, t: usize) -> u64 {
        if t == 0 {
            return 0;
        }
        self.counts.get(t - 1).copied().unwrap_or(0)
    }

    /// The sequence padded or cut to `(N_1, ..., N_len)`.
    pub fn padded(&self, len: usize) -> Vec<u64> {
        (1..=len).map(|t| self.get(t)).collect()
    }
}

/// Per-column incidence masks over a list of codewords: bit `i` of column
/// `j` is coordinate `j` of codeword `i`.
#[derive(Clone, Debug)]
pub struct ColumnIncidence {
    columns: Vec<BitVec>,
}

impl ColumnIncidence {
    pub fn new(n: usize, codewords: &[BitVec]) -> Self {
        let mut columns = vec![BitVec::zeros(codewords.len()); n];
        for (i, c) in codewords.iter().enumerate() {
            for j in c.iter_ones() {
                columns[j].set(i, true);
            }
        }
        ColumnIncidence { columns }
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.columns[j]
    }

    /// Number of codewords that are one on every listed coordinate.
    pub fn coverage(&self, coordinates: &[usize]) -> u64 {
        let Some((&first, rest)) = coordinates.split_first() else {
            return self.columns.first().map_or(0, |c| c.len() as u64);
        };
        let mut acc = self.columns[first].clone();
        for &j in rest {
            acc = acc.and(&self.columns[j]);
        }
        acc.count_ones() as u64
    }

    /// Histogram of 4-subset coverage, indexed by `t` (including `t = 0`).
    pub fn quadruple_histogram(&self) -> Vec<u64> {
        let n = self.n();
        let parts: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut hist: Vec<u64> = Vec::new();
                let ca = &self.columns[a];
                for b in a + 1..n {
                    let ab = ca.and(&self.columns[b]);
                    for c in b + 1..n {
                        let abc = ab.and(&self.columns[c]);
                        if abc.is_zero() {
                            bump(&mut hist, 0, (n - c - 1) as u64);
                            continue;
                        }
                        for d in c + 1..n {
                            bump(&mut hist, abc.and_count(&self.columns[d]), 1);
                        }
                    }
                }
                hist
            })
            .collect();
        let mut total = Vec::new();
        for h in parts {
            for (t, c) in h.into_iter().enumerate() {
                bump(&mut total, t, c);
            }
        }
        total
    }
}

fn bump(hist: &mut Vec<u64>, t: usize, by: u64) {
    if by == 0 {
        return;
    }
    if hist.len() <= t {
        hist.resize(t + 1, 0);
    }
    hist[t] += by;
}

/// `N_t` computed from an explicit list of weight-`w` codewords.
pub fn nt_from_codewords(n: usize, k: usize, weight: usize, codewords: &[BitVec]) -> NtSequence {
    let hist = ColumnIncidence::new(n, codewords).quadruple_histogram();
    let mut counts: Vec<u64> = hist.into_iter().skip(1).collect();
    while counts.last() == Some(&0) {
        counts.pop();
    }
    NtSequence { n, k, weight, counts }
}

/// `N_t` for the weight-`w` codewords of a binary code.
pub fn nt_sequence(code: &LinearCode, weight: usize) -> Result<NtSequence> {
    let words = minweight::codewords_of_weight(code, weight)?;
    Ok(nt_from_codewords(code.n(), code.k(), weight, &words))
}

/// Evidence that two codes are inequivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantVerdict {
    /// The sequences first differ at `N_t` for this `t`.
    Inequivalent { t: usize },
    /// The sequences agree; the codes may or may not be equivalent.
    Inconclusive,
}

pub fn compare_sequences(a: &NtSequence, b: &NtSequence) -> InvariantVerdict {
    let len = a.counts.len().max(b.counts.len());
    match (1..=len).find(|&t| a.get(t) != b.get(t)) {
        Some(t) => InvariantVerdict::Inequivalent { t },
        None => InvariantVerdict::Inconclusive,
    }
}

pub fn inequivalent_by_invariant(c1: &LinearCode, c2: &LinearCode, weight: usize) -> Result<InvariantVerdict> {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return Err(Error::Dimension(format!(
            "cannot compare [{}, {}] with [{}, {}]",
            c1.n(),
            c1.k(),
            c2.n(),
            c2.k()
        )));
    }
    Ok(compare_sequences(&nt_sequence(c1, weight)?, &nt_sequence(c2, weight)?))
}

/// Deduplication key: weight distribution plus the `N_t` sequence at the
/// minimum weight, hashed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub min_weight: usize,
    pub digest: String,
}

impl Fingerprint {
    pub fn from_parts(distribution: &WeightDistribution, nt: &NtSequence) -> Self {
        let mut h = Sha256::new();
        h.update(b"dist");
        for c in distribution.counts() {
            h.update(c.to_le_bytes());
        }
        h.update(b"nt");
        h.update((nt.weight as u64).to_le_bytes());
        for c in &nt.counts {
            h.update(c.to_le_bytes());
        }
        Fingerprint {
            min_weight: distribution.min_weight().unwrap_or(0),
            digest: hex::encode(h.finalize()),
        }
    }
}

/// Fingerprint plus the pieces it was computed from.
#[derive(Clone, Debug)]
pub struct Profile {
    pub distribution: WeightDistribution,
    pub nt: NtSequence,
    pub fingerprint: Fingerprint,
}

/// One enumeration pass for the distribution and the minimum-weight
/// codewords, then the `N_t` sequence at the minimum weight.
pub fn profile(code: &LinearCode) -> Result<Profile> {
    let distribution = minweight::weight_distribution(code)?;
    let w = distribution
        .min_weight()
        .ok_or_else(|| Error::Precondition("the zero code has no minimum weight".into()))?;
    let nt = nt_sequence(code, w)?;
    let fingerprint = Fingerprint::from_parts(&distribution, &nt);
    Ok(Profile {
        distribution,
        nt,
        fingerprint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldMatrix, PrimeField};

    fn hamming8() -> LinearCode {
        let g = FieldMatrix::parse_rows(PrimeField::BINARY, "10000111\n01001011\n00101101\n00011110").unwrap();
        LinearCode::new(g).unwrap()
    }

    #[test]
    fn no_codewords_gives_zero_sequence() {
        let s = nt_sequence(&hamming8(), 3).unwrap();
        assert!(s.counts.is_empty());
        assert_eq!(s.get(1), 0);
    }

    #[test]
    fn hamming_weight4_partition() {
        // the 14 weight-4 words form a 3-(8,4,1) design: every 4-subset is
        // covered at most once, and 14 of the 70 are covered exactly once
        let s = nt_sequence(&hamming8(), 4).unwrap();
        assert_eq!(s.counts, vec![14]);
    }

    #[test]
    fn permuted_code_is_inconclusive() {
        let c = hamming8();
        let p = c.permute_columns(&[3, 1, 7, 0, 2, 6, 5, 4]).unwrap();
        assert_eq!(
            inequivalent_by_invariant(&c, &p, 4).unwrap(),
            InvariantVerdict::Inconclusive
        );
        assert_eq!(
            inequivalent_by_invariant(&c, &c, 4).unwrap(),
            InvariantVerdict::Inconclusive
        );
    }

    #[test]
    fn parameter_mismatch() {
        let c = hamming8();
        let d = c.puncture(&[0]).unwrap();
        assert!(inequivalent_by_invariant(&c, &d, 4).is_err());
    }

    #[test]
    fn sequence_comparison() {
        let a = NtSequence {
            n: 8,
            k: 4,
            weight: 4,
            counts: vec![3, 1],
        };
        let b = NtSequence {
            n: 8,
            k: 4,
            weight: 4,
            counts: vec![3],
        };
        assert_eq!(compare_sequences(&a, &b), InvariantVerdict::Inequivalent { t: 2 });
        assert_eq!(a.padded(3), vec![3, 1, 0]);
    }
}
