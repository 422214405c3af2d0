//! Slow reference implementations used to cross-check the fast paths.
//!
//! Everything here works from explicit codeword enumeration (lexicographic
//! information vectors times the generator) and never touches the Gray-code
//! walk, rank-based hull formula, mask-based invariants or the pruned
//! equivalence search.

use std::collections::{BTreeSet, HashSet};

use crate::code::LinearCode;
use crate::error::Result;
use crate::field::FieldVector;

/// All codewords as symbol vectors.
pub fn codeword_set(code: &LinearCode) -> Result<BTreeSet<Vec<u8>>> {
    Ok(code.codewords()?.iter().map(FieldVector::to_symbols).collect())
}

pub fn weight_counts(code: &LinearCode) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; code.n() + 1];
    for c in code.codewords()? {
        counts[c.to_symbols().iter().filter(|&&s| s != 0).count()] += 1;
    }
    Ok(counts)
}

pub fn min_weight(code: &LinearCode) -> Result<Option<usize>> {
    let counts = weight_counts(code)?;
    Ok((1..counts.len()).find(|&w| counts[w] > 0))
}

/// `dim(C ∩ C^⊥)` by counting codewords orthogonal to every codeword.
pub fn hull_dim(code: &LinearCode) -> Result<usize> {
    let words = code.codewords()?;
    let p = code.field().p() as u64;
    let dot = |a: &[u8], b: &[u8]| a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p;
    let syms: Vec<Vec<u8>> = words.iter().map(FieldVector::to_symbols).collect();
    let size = syms.iter().filter(|c| syms.iter().all(|d| dot(c, d) == 0)).count() as u64;
    let mut dim = 0;
    let mut s = 1u64;
    while s < size {
        s *= p;
        dim += 1;
    }
    assert_eq!(s, size, "intersection size must be a power of q");
    Ok(dim)
}

/// `N_t` histogram (index `t`, including `t = 0`) by direct quadruple loop.
pub fn nt_histogram(n: usize, codewords: &[FieldVector]) -> Vec<u64> {
    let mut hist = vec![0u64; codewords.len() + 1];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let t = codewords
                        .iter()
                        .filter(|w| w.get(a) == 1 && w.get(b) == 1 && w.get(c) == 1 && w.get(d) == 1)
                        .count();
                    hist[t] += 1;
                }
            }
        }
    }
    while hist.len() > 1 && hist.last() == Some(&0) {
        hist.pop();
    }
    hist
}

/// Searches all `n!` coordinate permutations for one carrying `c1` onto
/// `c2`. `witness[j]` is the image of coordinate `j`.
pub fn brute_force_equivalence(c1: &LinearCode, c2: &LinearCode) -> Result<Option<Vec<usize>>> {
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return Ok(None);
    }
    let n = c1.n();
    let target: HashSet<Vec<u8>> = codeword_set(c2)?.into_iter().collect();
    let rows: Vec<Vec<u8>> = c1.generator().rows().iter().map(FieldVector::to_symbols).collect();
    let maps = |perm: &[usize]| {
        rows.iter().all(|r| {
            let mut img = vec![0u8; n];
            for (j, &t) in perm.iter().enumerate() {
                img[t] = r[j];
            }
            target.contains(&img)
        })
    };
    // Heap's algorithm
    let mut perm: Vec<usize> = (0..n).collect();
    if maps(&perm) {
        return Ok(Some(perm));
    }
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if maps(&perm) {
                return Ok(Some(perm));
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(None)
}
