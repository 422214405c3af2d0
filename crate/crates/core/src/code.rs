//! Linear codes held as generator matrices, with duals, hulls, the standard
//! predicates, shortening and puncturing.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{rref_rows, FieldMatrix, FieldVector, PrimeField};

/// A k-dimensional subspace of GF(p)^n with a full-rank generator.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: FieldMatrix,
    rref: FieldMatrix,
    pivots: Vec<usize>,
}

/// `[I_k | A]` presentation after a column permutation.
///
/// `column_permutation[i]` is the original coordinate that sits at position
/// `i` of the permuted code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    column_permutation: Vec<usize>,
    a: FieldMatrix,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting rank-deficient input.
    pub fn new(generator: FieldMatrix) -> Result<Self> {
        if let Some(row) = first_dependent_row(&generator) {
            return Err(Error::RankDeficient { row });
        }
        if generator.nrows() > generator.ncols() {
            return Err(Error::Dimension(format!(
                "k = {} exceeds n = {}",
                generator.nrows(),
                generator.ncols()
            )));
        }
        let (rref, pivots) = generator.rref();
        Ok(LinearCode {
            generator,
            rref,
            pivots,
        })
    }

    /// The code spanned by `rows`, which may be dependent or empty.
    pub fn spanned_by(field: PrimeField, n: usize, rows: Vec<FieldVector>) -> Result<Self> {
        let m = FieldMatrix::from_rows(field, n, rows)?;
        let (rref, pivots) = m.rref();
        Ok(LinearCode {
            generator: rref.clone(),
            rref,
            pivots,
        })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        let empty = FieldMatrix::zeros(field, 0, n);
        LinearCode {
            generator: empty.clone(),
            rref: empty,
            pivots: Vec::new(),
        }
    }

    pub fn full_space(field: PrimeField, n: usize) -> Self {
        let id = FieldMatrix::identity(field, n);
        LinearCode {
            generator: id.clone(),
            rref: id,
            pivots: (0..n).collect(),
        }
    }

    /// Builds the code generated by `[I_k | a]`.
    pub fn from_systematic(a: &FieldMatrix) -> Result<Self> {
        let g = FieldMatrix::identity(a.field(), a.nrows()).hstack(a)?;
        Self::new(g)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.generator.field()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.generator.ncols()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    /// Canonical reduced row-echelon generator.
    pub fn rref(&self) -> &FieldMatrix {
        &self.rref
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &FieldVector) -> FieldVector {
        let mut r = v.clone();
        let f = self.field();
        for (row, &c) in self.rref.rows().iter().zip(&self.pivots) {
            let coeff = r.get(c);
            if coeff != 0 {
                r.add_scaled_assign(row, f.neg(coeff));
            }
        }
        r
    }

    pub fn contains(&self, v: &FieldVector) -> Result<bool> {
        if v.len() != self.n() {
            return Err(Error::Dimension(format!(
                "vector of length {} vs code length {}",
                v.len(),
                self.n()
            )));
        }
        if v.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: v.field().p(),
                right: self.field().p(),
            });
        }
        Ok(self.reduce(v).is_zero())
    }

    /// Set equality of the two codes.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field() == other.field() && self.n() == other.n() && self.rref == other.rref
    }

    /// Encodes an information vector of length k.
    pub fn encode(&self, message: &FieldVector) -> Result<FieldVector> {
        self.generator.left_mul(message)
    }

    pub fn standard_form(&self) -> StandardForm {
        let k = self.k();
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        let non_pivots: Vec<usize> = (0..self.n()).filter(|c| !pivot_set.contains(c)).collect();
        let mut column_permutation = self.pivots.clone();
        column_permutation.extend(&non_pivots);
        let a = self.rref.select_columns(&non_pivots);
        debug_assert_eq!(a.nrows(), k);
        StandardForm { column_permutation, a }
    }

    pub fn dual(&self) -> LinearCode {
        let f = self.field();
        let n = self.n();
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        let rows = (0..n)
            .filter(|c| !pivot_set.contains(c))
            .map(|j| {
                let mut s = vec![0u8; n];
                s[j] = 1;
                for (i, &pc) in self.pivots.iter().enumerate() {
                    s[pc] = f.neg(self.rref.get(i, j));
                }
                FieldVector::from_symbols(f, &s).expect("reduced symbols")
            })
            .collect();
        LinearCode::new(FieldMatrix::from_rows(f, n, rows).expect("conforming rows"))
            .expect("null-space basis is independent")
    }

    /// `G G^T` for the stored generator.
    pub fn gram(&self) -> FieldMatrix {
        self.generator.gram()
    }

    /// `dim(C ∩ C^⊥) = k - rank(G G^T)`.
    pub fn hull_dim(&self) -> usize {
        self.k() - self.gram().rank()
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dim() == 0
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram().rank() == 0
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.k() == self.n() && self.is_self_orthogonal()
    }

    fn require_binary(&self) -> Result<()> {
        if self.field().is_binary() {
            Ok(())
        } else {
            Err(Error::UnsupportedField(self.field().p()))
        }
    }

    /// Every codeword has even weight, i.e. the all-ones vector is in the dual.
    pub fn is_even(&self) -> Result<bool> {
        self.require_binary()?;
        let ones = FieldVector::ones(self.field(), self.n());
        Ok(self.generator.rows().iter().all(|g| g.dot_unchecked(&ones) == 0))
    }

    /// Self-orthogonal with every generator row of weight divisible by four.
    pub fn is_doubly_even(&self) -> Result<bool> {
        self.require_binary()?;
        Ok(self.generator.rows().iter().all(|g| g.weight() % 4 == 0) && self.is_self_orthogonal())
    }

    fn check_coordinates(&self, coordinates: &[usize]) -> Result<BTreeSet<usize>> {
        let n = self.n();
        coordinates
            .iter()
            .map(|&c| {
                if c < n {
                    Ok(c)
                } else {
                    Err(Error::CoordinateOutOfRange { coordinate: c, n })
                }
            })
            .collect()
    }

    /// Codewords vanishing on `coordinates`, with those coordinates deleted.
    /// Coordinates are 0-based.
    pub fn shorten(&self, coordinates: &[usize]) -> Result<LinearCode> {
        let t = self.check_coordinates(coordinates)?;
        let rest: Vec<usize> = (0..self.n()).filter(|c| !t.contains(c)).collect();
        let mut order: Vec<usize> = t.iter().copied().collect();
        order.extend(&rest);
        let reordered = self.generator.select_columns(&order);
        let (rows, pivots) = rref_rows(self.field(), order.len(), reordered.into_rows());
        let tail: Vec<usize> = (t.len()..order.len()).collect();
        let kept = rows
            .iter()
            .zip(&pivots)
            .filter(|(_, &p)| p >= t.len())
            .map(|(r, _)| r.select(&tail))
            .collect();
        LinearCode::spanned_by(self.field(), rest.len(), kept)
    }

    /// All codewords with `coordinates` deleted. Coordinates are 0-based.
    pub fn puncture(&self, coordinates: &[usize]) -> Result<LinearCode> {
        let t = self.check_coordinates(coordinates)?;
        let rest: Vec<usize> = (0..self.n()).filter(|c| !t.contains(c)).collect();
        let m = self.generator.select_columns(&rest);
        LinearCode::spanned_by(self.field(), rest.len(), m.into_rows())
    }

    /// The code with coordinate `i` taken from original coordinate `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<LinearCode> {
        if !is_permutation(perm, self.n()) {
            return Err(Error::Dimension(format!(
                "not a permutation of {} coordinates",
                self.n()
            )));
        }
        LinearCode::new(self.generator.select_columns(perm))
    }

    /// Every codeword, in lexicographic order of the information vector.
    /// Intended for small codes; refuses more than 2^22 codewords.
    pub fn codewords(&self) -> Result<Vec<FieldVector>> {
        const LIMIT: usize = 1 << 22;
        let q = self.field().p() as usize;
        let total = (0..self.k()).try_fold(1usize, |acc, _| acc.checked_mul(q).filter(|&t| t <= LIMIT));
        let Some(total) = total else {
            return Err(Error::Capacity {
                what: format!("{}^{} codewords", q, self.k()),
                limit: LIMIT,
            });
        };
        let f = self.field();
        let mut out = Vec::with_capacity(total);
        let mut msg = vec![0u8; self.k()];
        for _ in 0..total {
            let m = FieldVector::from_symbols(f, &msg).expect("reduced");
            out.push(self.encode(&m)?);
            for s in msg.iter_mut().rev() {
                *s += 1;
                if (*s as usize) < q {
                    break;
                }
                *s = 0;
            }
        }
        Ok(out)
    }

    /// Parses the text code format: a `q n k` header followed by k rows of n
    /// symbols each.
    pub fn parse_text(text: &str) -> Result<LinearCode> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `q n k` header".into(),
        })?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: hline,
                message: format!("bad header: {e}"),
            })?;
        let [q, n, k] = nums[..] else {
            return Err(Error::Parse {
                line: hline,
                message: "header must be `q n k`".into(),
            });
        };
        let field = PrimeField::new(q as u32).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        let mut rows = Vec::with_capacity(k);
        let mut row_lines = Vec::with_capacity(k);
        for (line, text) in lines.by_ref().take(k) {
            let row = FieldVector::parse(field, text).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            if row.len() != n {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {n} symbols, found {}", row.len()),
                });
            }
            rows.push(row);
            row_lines.push(line);
        }
        if rows.len() != k {
            return Err(Error::Parse {
                line: hline,
                message: format!("header promises {k} rows, found {}", rows.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: format!("unexpected content after {k} rows"),
            });
        }
        let g = FieldMatrix::from_rows(field, n, rows)?;
        LinearCode::new(g).map_err(|e| match e {
            Error::RankDeficient { row } => Error::Parse {
                line: row_lines[row],
                message: format!("generator row {} is linearly dependent on the rows above it", row + 1),
            },
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field().p(), self.n(), self.k());
        for r in self.generator.rows() {
            let _ = writeln!(s, "{r}");
        }
        s
    }
}

/// Returns the index of the first row that lies in the span of those above it.
fn first_dependent_row(m: &FieldMatrix) -> Option<usize> {
    let f = m.field();
    let mut basis: Vec<(usize, FieldVector)> = Vec::new();
    for (i, row) in m.rows().iter().enumerate() {
        let mut r = row.clone();
        for (c, b) in &basis {
            let coeff = r.get(*c);
            if coeff != 0 {
                r.add_scaled_assign(b, f.neg(coeff));
            }
        }
        match r.leading_index() {
            None => return Some(i),
            Some(c) => {
                let lead = r.get(c);
                r.scale_assign(f.inv(lead));
                basis.push((c, r));
            }
        }
    }
    None
}

pub(crate) fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
}

/// Mallows-Sloane bound check for a binary doubly even self-dual code with
/// computed minimum weight `d`: extremal iff `d = 4 floor(n/24) + 4`.
pub fn is_extremal_doubly_even_self_dual(code: &LinearCode, d: usize) -> Result<bool> {
    if !code.is_doubly_even()? || !code.is_self_dual() {
        return Err(Error::Precondition(
            "extremality is defined for doubly even self-dual codes".into(),
        ));
    }
    Ok(d == mallows_sloane_bound(code.n()))
}

pub fn mallows_sloane_bound(n: usize) -> usize {
    4 * (n / 24) + 4
}

impl StandardForm {
    /// A code already given as `[I_k | a]`.
    pub fn from_a(a: FieldMatrix) -> Self {
        let n = a.nrows() + a.ncols();
        StandardForm {
            column_permutation: (0..n).collect(),
            a,
        }
    }

    pub fn a(&self) -> &FieldMatrix {
        &self.a
    }

    pub fn column_permutation(&self) -> &[usize] {
        &self.column_permutation
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.column_permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn k(&self) -> usize {
        self.a.nrows()
    }

    pub fn n(&self) -> usize {
        self.a.nrows() + self.a.ncols()
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    /// The code generated by `[I_k | A]`, in permuted coordinates.
    pub fn to_code(&self) -> LinearCode {
        LinearCode::from_systematic(&self.a).expect("systematic generators have full rank")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> LinearCode {
        LinearCode::new(FieldMatrix::parse_rows(PrimeField::BINARY, text).unwrap()).unwrap()
    }

    fn hamming8() -> LinearCode {
        code("10000111\n01001011\n00101101\n00011110")
    }

    #[test]
    fn standard_form_identity_permutation() {
        let sf = code("101\n011").standard_form();
        assert!(sf.is_identity_permutation());
        assert_eq!(sf.a().to_string(), "1\n1\n");
        let sf = code("011\n101").standard_form();
        assert!(sf.is_identity_permutation());
    }

    #[test]
    fn standard_form_moves_pivots_forward() {
        let c = code("0011\n0101");
        let sf = c.standard_form();
        assert_eq!(sf.column_permutation(), &[1, 2, 0, 3]);
        let permuted = c.permute_columns(sf.column_permutation()).unwrap();
        assert!(permuted.same_code(&sf.to_code()));
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let d = LinearCode::full_space(PrimeField::BINARY, 3).dual();
        assert_eq!(d.k(), 0);
        assert_eq!(d.n(), 3);
        assert_eq!(LinearCode::zero(PrimeField::BINARY, 3).dual().k(), 3);
    }

    #[test]
    fn predicates_on_small_codes() {
        let c = code("11");
        assert!(c.is_self_orthogonal());
        assert!(!c.is_lcd());
        assert!(c.is_self_dual());
        let c = code("10");
        assert!(!c.is_even().unwrap());
        assert!(c.is_lcd());
        let h = hamming8();
        assert!(h.is_doubly_even().unwrap());
        assert!(h.is_self_dual());
        assert_eq!(h.hull_dim(), 4);
    }

    #[test]
    fn even_requires_binary() {
        let f3 = PrimeField::new(3).unwrap();
        let c = LinearCode::full_space(f3, 2);
        assert_eq!(c.is_even(), Err(Error::UnsupportedField(3)));
        assert_eq!(c.is_doubly_even(), Err(Error::UnsupportedField(3)));
    }

    #[test]
    fn shorten_full_space() {
        let c = LinearCode::full_space(PrimeField::BINARY, 3).shorten(&[0]).unwrap();
        assert_eq!((c.n(), c.k()), (2, 2));
        assert!(matches!(
            LinearCode::full_space(PrimeField::BINARY, 3).shorten(&[3]),
            Err(Error::CoordinateOutOfRange { coordinate: 3, n: 3 })
        ));
    }

    #[test]
    fn puncture_extended_hamming() {
        let p = hamming8().puncture(&[7]).unwrap();
        assert_eq!((p.n(), p.k()), (7, 4));
        let dmin = p
            .codewords()
            .unwrap()
            .iter()
            .map(FieldVector::weight)
            .filter(|&w| w > 0)
            .min();
        assert_eq!(dmin, Some(3));
    }

    #[test]
    fn extremality() {
        let h = hamming8();
        assert!(h.is_doubly_even().unwrap());
        assert!(!is_extremal_doubly_even_self_dual(&h, 2).unwrap());
        assert!(is_extremal_doubly_even_self_dual(&h, 4).unwrap());
        assert_eq!(mallows_sloane_bound(56), 12);
        assert_eq!(mallows_sloane_bound(24), 8);
        assert!(is_extremal_doubly_even_self_dual(&code("10"), 1).is_err());
    }

    #[test]
    fn text_round_trip_and_diagnostics() {
        let h = hamming8();
        let back = LinearCode::parse_text(&h.to_text()).unwrap();
        assert!(back.same_code(&h));
        let err = LinearCode::parse_text("2 3 3\n110\n011\n101\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                message: "generator row 3 is linearly dependent on the rows above it".into()
            }
        );
        assert!(matches!(
            LinearCode::parse_text("2 3 1\n11\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
