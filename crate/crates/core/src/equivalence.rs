//! Exact permutation equivalence of binary codes.
//!
//! Columns are classified by how often they occur in the low-weight
//! codewords, and by how often each pair of columns occurs together. A
//! backtracking search then assigns columns of the first code to columns of
//! the second, keeping only assignments whose pair counts agree with
//! everything assigned so far and whose generator columns are related by a
//! single invertible linear map. Every complete assignment is checked by
//! mapping the generator of the first code into the second, so a reported
//! witness is always valid. A search that exceeds its node budget reports
//! [`Equivalence::Unknown`].

use crate::bits::BitVec;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::invariant::ColumnIncidence;
use crate::minweight;

/// Codes with at most this many codewords are classified using all of them.
const SMALL_CODE: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// `witness[j]` is the column of the second code that column `j` of the
    /// first code maps to.
    Equivalent(Vec<usize>),
    Inequivalent,
    /// The node budget ran out.
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub struct EquivalenceOptions {
    pub node_budget: u64,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            node_budget: 10_000_000,
        }
    }
}

/// Maps every coordinate `j` of `v` to `witness[j]`.
pub fn apply_witness(v: &FieldVector, witness: &[usize]) -> FieldVector {
    let mut s = vec![0u8; v.len()];
    for (j, &t) in witness.iter().enumerate() {
        s[t] = v.get(j);
    }
    FieldVector::from_symbols(v.field(), &s).expect("same symbols")
}

/// Checks that the witness maps every generator row of `c1` into `c2`.
pub fn witness_is_valid(c1: &LinearCode, c2: &LinearCode, witness: &[usize]) -> bool {
    crate::code::is_permutation(witness, c1.n())
        && c1.n() == c2.n()
        && c1.k() == c2.k()
        && c1
            .generator()
            .rows()
            .iter()
            .all(|r| c2.contains(&apply_witness(r, witness)).unwrap_or(false))
}

/// Column signatures for one code.
struct Signatures {
    /// Per weight class, occurrences of each column.
    single: Vec<Vec<u64>>,
    /// Per weight class, `pair[a * n + b]` co-occurrences of columns a and b.
    pair: Vec<Vec<u32>>,
    /// Sorted pair-count profile of each column, used as a static invariant.
    profile: Vec<Vec<u32>>,
}

impl Signatures {
    fn new(n: usize, classes: &[Vec<BitVec>]) -> Self {
        let mut single = Vec::new();
        let mut pair = Vec::new();
        let mut profile = vec![Vec::new(); n];
        for words in classes {
            let inc = ColumnIncidence::new(n, words);
            single.push((0..n).map(|j| inc.column(j).count_ones() as u64).collect());
            let mut p = vec![0u32; n * n];
            for a in 0..n {
                for b in a + 1..n {
                    let c = inc.column(a).and_count(inc.column(b)) as u32;
                    p[a * n + b] = c;
                    p[b * n + a] = c;
                }
            }
            for (a, prof) in profile.iter_mut().enumerate() {
                let mut row: Vec<u32> = (0..n).filter(|&b| b != a).map(|b| p[a * n + b]).collect();
                row.sort_unstable();
                prof.extend(row);
            }
            pair.push(p);
        }
        Signatures { single, pair, profile }
    }

    fn static_key(&self, j: usize) -> (Vec<u64>, &[u32]) {
        (self.single.iter().map(|s| s[j]).collect(), &self.profile[j])
    }
}

/// Decides whether some column permutation maps `c1` onto `c2`.
pub fn is_equivalent(c1: &LinearCode, c2: &LinearCode, options: EquivalenceOptions) -> Result<Equivalence> {
    if !c1.field().is_binary() || !c2.field().is_binary() {
        return Err(Error::UnsupportedField(if c1.field().is_binary() {
            c2.field().p()
        } else {
            c1.field().p()
        }));
    }
    if c1.n() != c2.n() || c1.k() != c2.k() {
        return Err(Error::Dimension(format!(
            "cannot compare [{}, {}] with [{}, {}]",
            c1.n(),
            c1.k(),
            c2.n(),
            c2.k()
        )));
    }
    let n = c1.n();
    if c1.k() == 0 || c1.k() == n {
        return Ok(Equivalence::Equivalent((0..n).collect()));
    }
    let d1 = minweight::weight_distribution(c1)?;
    let d2 = minweight::weight_distribution(c2)?;
    if d1 != d2 {
        return Ok(Equivalence::Inequivalent);
    }

    let weights = signature_weights(d1.counts());
    let gather = |c: &LinearCode| -> Result<Vec<Vec<BitVec>>> {
        if d1.total() <= SMALL_CODE {
            let words: Vec<BitVec> = c
                .codewords()?
                .into_iter()
                .map(|w| w.as_bits().expect("binary").clone())
                .collect();
            Ok(weights
                .iter()
                .map(|&w| words.iter().filter(|v| v.count_ones() == w).cloned().collect())
                .collect())
        } else {
            weights.iter().map(|&w| minweight::codewords_of_weight(c, w)).collect()
        }
    };
    let s1 = Signatures::new(n, &gather(c1)?);
    let s2 = Signatures::new(n, &gather(c2)?);

    // static candidate lists
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for a in 0..n {
        let key = s1.static_key(a);
        candidates.push((0..n).filter(|&b| s2.static_key(b) == key).collect());
    }
    let mut m1: Vec<_> = (0..n).map(|j| s1.static_key(j)).collect();
    let mut m2: Vec<_> = (0..n).map(|j| s2.static_key(j)).collect();
    m1.sort();
    m2.sort();
    if m1 != m2 {
        return Ok(Equivalence::Inequivalent);
    }

    let mut search = Search {
        n,
        c1,
        c2,
        s1: &s1,
        s2: &s2,
        cols1: column_masks(c1),
        cols2: column_masks(c2),
        linear: LinearState::default(),
        candidates,
        assigned: Vec::with_capacity(n),
        image: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        budget: options.node_budget,
    };
    Ok(match search.run() {
        Outcome::Found => Equivalence::Equivalent(search.image.clone()),
        Outcome::Exhausted => Equivalence::Inequivalent,
        Outcome::OutOfBudget => Equivalence::Unknown,
    })
}

/// All nonzero weights for small codes, otherwise only the minimum weight
/// so that a single enumeration pass suffices.
fn signature_weights(counts: &[u64]) -> Vec<usize> {
    let total: u64 = counts.iter().sum();
    let mut nonzero = (1..counts.len()).filter(|&w| counts[w] > 0);
    if total <= SMALL_CODE {
        nonzero.collect()
    } else {
        nonzero.next().into_iter().collect()
    }
}

/// Generator columns as bit masks over the `k` rows, when `k` fits.
fn column_masks(c: &LinearCode) -> Option<Vec<u64>> {
    if c.k() > 64 {
        return None;
    }
    let mut cols = vec![0u64; c.n()];
    for (i, row) in c.rref().rows().iter().enumerate() {
        for j in row.as_bits().expect("binary").iter_ones() {
            cols[j] |= 1 << i;
        }
    }
    Some(cols)
}

/// XOR basis kept in echelon form by leading bit.
#[derive(Clone, Default)]
struct XorBasis {
    rows: Vec<u128>,
}

impl XorBasis {
    fn reduce(&self, mut v: u128) -> u128 {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        v
    }

    /// Adds `v`; false if it was already in the span.
    fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pos = self.rows.partition_point(|&r| r > v);
        self.rows.insert(pos, v);
        true
    }
}

/// The assigned pairs `(g1_a, g2_b)` span the graph of an invertible linear
/// map exactly when the left, right and joint spans have equal rank.
#[derive(Clone, Default)]
struct LinearState {
    left: XorBasis,
    right: XorBasis,
    joint: XorBasis,
}

impl LinearState {
    fn extended(&self, g1: u64, g2: u64) -> Option<LinearState> {
        let mut next = self.clone();
        let l = next.left.insert(g1 as u128);
        let r = next.right.insert(g2 as u128);
        let j = next.joint.insert(((g1 as u128) << 64) | g2 as u128);
        (l == r && r == j).then_some(next)
    }
}

/// An image column and the linear state after assigning it.
type Choice = (usize, Option<LinearState>);

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    n: usize,
    c1: &'a LinearCode,
    c2: &'a LinearCode,
    s1: &'a Signatures,
    s2: &'a Signatures,
    cols1: Option<Vec<u64>>,
    cols2: Option<Vec<u64>>,
    linear: LinearState,
    candidates: Vec<Vec<usize>>,
    assigned: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn compatible(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        self.assigned.iter().all(|&x| {
            let y = self.image[x];
            self.s1
                .pair
                .iter()
                .zip(&self.s2.pair)
                .all(|(p1, p2)| p1[a * n + x] == p2[b * n + y])
        })
    }

    fn linear_step(&self, a: usize, b: usize) -> Option<Option<LinearState>> {
        match (&self.cols1, &self.cols2) {
            (Some(c1), Some(c2)) => self.linear.extended(c1[a], c2[b]).map(Some),
            _ => Some(None),
        }
    }

    fn run(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        if self.assigned.len() == self.n {
            return if witness_is_valid(self.c1, self.c2, &self.image) {
                Outcome::Found
            } else {
                Outcome::Exhausted
            };
        }
        // most constrained unassigned column first
        let mut best: Option<(usize, Vec<Choice>)> = None;
        for a in 0..self.n {
            if self.image[a] != usize::MAX {
                continue;
            }
            let options: Vec<Choice> = self.candidates[a]
                .iter()
                .copied()
                .filter(|&b| !self.used[b] && self.compatible(a, b))
                .filter_map(|b| self.linear_step(a, b).map(|s| (b, s)))
                .collect();
            if options.is_empty() {
                return Outcome::Exhausted;
            }
            if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                let done = options.len() == 1;
                best = Some((a, options));
                if done {
                    break;
                }
            }
        }
        let (a, options) = best.expect("an unassigned column exists");
        for (b, state) in options {
            let saved = state.map(|s| std::mem::replace(&mut self.linear, s));
            self.image[a] = b;
            self.used[b] = true;
            self.assigned.push(a);
            match self.run() {
                Outcome::Exhausted => {}
                other => return other,
            }
            self.assigned.pop();
            self.used[b] = false;
            self.image[a] = usize::MAX;
            if let Some(prev) = saved {
                self.linear = prev;
            }
        }
        Outcome::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldMatrix, PrimeField};

    fn code(text: &str) -> LinearCode {
        LinearCode::new(FieldMatrix::parse_rows(PrimeField::BINARY, text).unwrap()).unwrap()
    }

    #[test]
    fn code_is_equivalent_to_itself() {
        let c = code("1000111\n0100110\n0010101\n0001011");
        match is_equivalent(&c, &c, EquivalenceOptions::default()).unwrap() {
            Equivalence::Equivalent(w) => assert!(witness_is_valid(&c, &c, &w)),
            other => panic!("expected equivalent, got {other:?}"),
        }
    }

    #[test]
    fn permuted_hamming_recovered() {
        let c = code("1000111\n0100110\n0010101\n0001011");
        let p = c.permute_columns(&[6, 2, 4, 0, 1, 5, 3]).unwrap();
        match is_equivalent(&c, &p, EquivalenceOptions::default()).unwrap() {
            Equivalence::Equivalent(w) => assert!(witness_is_valid(&c, &p, &w)),
            other => panic!("expected equivalent, got {other:?}"),
        }
    }

    #[test]
    fn distribution_mismatch_is_inequivalent() {
        let a = code("100110\n010101\n001011");
        let b = code("100000\n010000\n001111");
        assert_eq!(
            is_equivalent(&a, &b, EquivalenceOptions::default()).unwrap(),
            Equivalence::Inequivalent
        );
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        let c = code("1000111\n0100110\n0010101\n0001011");
        let opts = EquivalenceOptions { node_budget: 1 };
        assert_eq!(is_equivalent(&c, &c, opts).unwrap(), Equivalence::Unknown);
    }
}
