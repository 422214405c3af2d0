//! Prime-field scalars, vectors and matrices.
//!
//! Vectors over GF(2) are stored bit-packed; every other prime uses one byte
//! per symbol. All public operations are pure and return fresh values.

use std::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// GF(p) for a prime `p <= 251`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub const BINARY: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=251).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u8 })
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse via Fermat; `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.p as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn element(self, value: u32) -> Result<u8> {
        if value < self.p as u32 {
            Ok(value as u8)
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: value,
                p: self.p,
            })
        }
    }

    fn check_same(self, other: PrimeField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Symbols {
    Packed(BitVec),
    Wide(Vec<u8>),
}

/// A vector in GF(p)^m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector {
    field: PrimeField,
    data: Symbols,
}

/// Text symbol for a field element: `0-9` then `a-z`.
pub(crate) fn symbol_char(s: u8) -> char {
    std::char::from_digit(s as u32, 36).expect("symbol below 36")
}

pub(crate) fn parse_symbol(c: char) -> Option<u32> {
    c.to_digit(36)
}

impl FieldVector {
    pub fn zeros(field: PrimeField, len: usize) -> Self {
        let data = if field.is_binary() {
            Symbols::Packed(BitVec::zeros(len))
        } else {
            Symbols::Wide(vec![0; len])
        };
        FieldVector { field, data }
    }

    pub fn from_symbols(field: PrimeField, symbols: &[u8]) -> Result<Self> {
        for &s in symbols {
            field.element(s as u32)?;
        }
        Ok(Self::from_reduced(field, symbols.to_vec()))
    }

    /// Reduces arbitrary integers into the field.
    pub fn from_integers(field: PrimeField, values: &[i64]) -> Self {
        let p = field.p as i64;
        Self::from_reduced(field, values.iter().map(|v| v.rem_euclid(p) as u8).collect())
    }

    fn from_reduced(field: PrimeField, symbols: Vec<u8>) -> Self {
        let data = if field.is_binary() {
            Symbols::Packed(BitVec::from_bools(symbols.iter().map(|&s| s == 1)))
        } else {
            Symbols::Wide(symbols)
        };
        FieldVector { field, data }
    }

    pub fn from_bits(bits: BitVec) -> Self {
        FieldVector {
            field: PrimeField::BINARY,
            data: Symbols::Packed(bits),
        }
    }

    pub fn ones(field: PrimeField, len: usize) -> Self {
        Self::from_reduced(field, vec![1; len])
    }

    /// Parses a whitespace-free symbol string such as `0101`. Interior
    /// whitespace is ignored, which accepts vectors printed as `(0 1 0 1)`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
        let mut symbols = Vec::new();
        for c in trimmed.chars().filter(|c| !c.is_whitespace()) {
            let v = parse_symbol(c).ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("invalid symbol `{c}`"),
            })?;
            symbols.push(field.element(v)?);
        }
        Ok(Self::from_reduced(field, symbols))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        match &self.data {
            Symbols::Packed(b) => b.len(),
            Symbols::Wide(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        match &self.data {
            Symbols::Packed(b) => b.get(i) as u8,
            Symbols::Wide(v) => v[i],
        }
    }

    pub fn to_symbols(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// The packed representation, present exactly when the field is GF(2).
    pub fn as_bits(&self) -> Option<&BitVec> {
        match &self.data {
            Symbols::Packed(b) => Some(b),
            Symbols::Wide(_) => None,
        }
    }

    pub fn weight(&self) -> usize {
        match &self.data {
            Symbols::Packed(b) => b.count_ones(),
            Symbols::Wide(v) => v.iter().filter(|&&s| s != 0).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Symbols::Packed(b) => b.is_zero(),
            Symbols::Wide(v) => v.iter().all(|&s| s == 0),
        }
    }

    fn check_conformable(&self, other: &FieldVector) -> Result<()> {
        self.field.check_same(other.field)?;
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Standard inner product `sum u_i v_i mod p`.
    pub fn inner_product(&self, other: &FieldVector) -> Result<u8> {
        self.check_conformable(other)?;
        Ok(self.dot_unchecked(other))
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &FieldVector) -> u8 {
        match (&self.data, &other.data) {
            (Symbols::Packed(a), Symbols::Packed(b)) => a.dot(b) as u8,
            (Symbols::Wide(a), Symbols::Wide(b)) => {
                let p = self.field.p as u32;
                let mut acc = 0u32;
                for (&x, &y) in a.iter().zip(b) {
                    acc = (acc + x as u32 * y as u32) % p;
                }
                acc as u8
            }
            _ => unreachable!("storage follows the field"),
        }
    }

    /// Symbol-by-symbol inner product with no packed fast path.
    pub fn inner_product_symbolwise(&self, other: &FieldVector) -> Result<u8> {
        self.check_conformable(other)?;
        let f = self.field;
        Ok((0..self.len()).fold(0, |acc, i| f.add(acc, f.mul(self.get(i), other.get(i)))))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &FieldVector, c: u8) -> Result<FieldVector> {
        self.check_conformable(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, c);
        Ok(out)
    }

    pub fn add(&self, other: &FieldVector) -> Result<FieldVector> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &FieldVector) -> Result<FieldVector> {
        self.add_scaled(other, self.field.neg(1))
    }

    pub fn scale(&self, c: u8) -> FieldVector {
        let f = self.field;
        match &self.data {
            Symbols::Packed(b) => {
                if c.is_multiple_of(2) {
                    FieldVector::zeros(f, b.len())
                } else {
                    self.clone()
                }
            }
            Symbols::Wide(v) => FieldVector {
                field: f,
                data: Symbols::Wide(v.iter().map(|&s| f.mul(s, c)).collect()),
            },
        }
    }

    pub fn neg(&self) -> FieldVector {
        self.scale(self.field.neg(1))
    }

    /// Componentwise product `u * v`.
    pub fn hadamard(&self, other: &FieldVector) -> Result<FieldVector> {
        self.check_conformable(other)?;
        Ok(match (&self.data, &other.data) {
            (Symbols::Packed(a), Symbols::Packed(b)) => FieldVector::from_bits(a.and(b)),
            _ => {
                let f = self.field;
                Self::from_reduced(f, (0..self.len()).map(|i| f.mul(self.get(i), other.get(i))).collect())
            }
        })
    }

    pub(crate) fn add_scaled_assign(&mut self, other: &FieldVector, c: u8) {
        let f = self.field;
        match (&mut self.data, &other.data) {
            (Symbols::Packed(a), Symbols::Packed(b)) => {
                if c % 2 == 1 {
                    a.xor_assign(b);
                }
            }
            (Symbols::Wide(a), Symbols::Wide(b)) => {
                if c != 0 {
                    for (x, &y) in a.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(y, c));
                    }
                }
            }
            _ => unreachable!("storage follows the field"),
        }
    }

    pub(crate) fn scale_assign(&mut self, c: u8) {
        if let Symbols::Wide(v) = &mut self.data {
            let f = self.field;
            for x in v.iter_mut() {
                *x = f.mul(*x, c);
            }
        } else if c.is_multiple_of(2) {
            *self = FieldVector::zeros(self.field, self.len());
        }
    }

    /// Keeps the listed coordinates, in the listed order.
    pub fn select(&self, positions: &[usize]) -> FieldVector {
        match &self.data {
            Symbols::Packed(b) => FieldVector::from_bits(b.select(positions)),
            Symbols::Wide(v) => FieldVector {
                field: self.field,
                data: Symbols::Wide(positions.iter().map(|&i| v[i]).collect()),
            },
        }
    }

    pub fn concat(&self, other: &FieldVector) -> Result<FieldVector> {
        self.field.check_same(other.field)?;
        let mut symbols = self.to_symbols();
        symbols.extend(other.to_symbols());
        Ok(Self::from_reduced(self.field, symbols))
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        match &self.data {
            Symbols::Packed(b) => b.iter_ones().next(),
            Symbols::Wide(v) => v.iter().position(|&s| s != 0),
        }
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data {
            Symbols::Packed(b) => write!(f, "{b}"),
            Symbols::Wide(v) => {
                for &s in v {
                    if s < 36 {
                        write!(f, "{}", symbol_char(s))?;
                    } else {
                        write!(f, "[{s}]")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// An `r x c` matrix over a prime field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    cols: usize,
    rows: Vec<FieldVector>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            cols,
            rows: vec![FieldVector::zeros(field, cols); rows],
        }
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let rows = (0..size)
            .map(|i| {
                let mut s = vec![0u8; size];
                s[i] = 1;
                FieldVector::from_reduced(field, s)
            })
            .collect();
        FieldMatrix {
            field,
            cols: size,
            rows,
        }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<FieldVector>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            field.check_same(r.field)?;
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
        }
        Ok(FieldMatrix { field, cols, rows })
    }

    pub fn from_symbol_rows(field: PrimeField, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| FieldVector::from_symbols(field, r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, cols, rows)
    }

    /// Parses one row per non-empty line of symbols.
    pub fn parse_rows(field: PrimeField, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = FieldVector::parse(field, line).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
                other => other,
            })?;
            rows.push(row);
        }
        let cols = rows.first().map_or(0, FieldVector::len);
        Self::from_rows(field, cols, rows)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &FieldVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[FieldVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<FieldVector> {
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows[i].get(j)
    }

    pub fn column(&self, j: usize) -> FieldVector {
        FieldVector::from_reduced(self.field, self.rows.iter().map(|r| r.get(j)).collect())
    }

    pub fn transpose(&self) -> FieldMatrix {
        let rows = (0..self.cols).map(|j| self.column(j)).collect();
        FieldMatrix {
            field: self.field,
            cols: self.rows.len(),
            rows,
        }
    }

    fn check_same_field(&self, other: &FieldMatrix) -> Result<()> {
        self.field.check_same(other.field)
    }

    /// Matrix product. Each output row is a linear combination of the rows of
    /// `other`, so the GF(2) case reduces to word-wide XORs.
    pub fn matmul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_field(other)?;
        if self.cols != other.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = FieldVector::zeros(self.field, other.cols);
                for l in 0..self.cols {
                    let c = r.get(l);
                    if c != 0 {
                        acc.add_scaled_assign(&other.rows[l], c);
                    }
                }
                acc
            })
            .collect();
        Ok(FieldMatrix {
            field: self.field,
            cols: other.cols,
            rows,
        })
    }

    /// Entry-by-entry matrix product with no packed fast path.
    pub fn matmul_symbolwise(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_field(other)?;
        if self.cols != other.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let f = self.field;
        let mut out = Vec::with_capacity(self.nrows());
        for i in 0..self.nrows() {
            let mut row = vec![0u8; other.cols];
            for (j, slot) in row.iter_mut().enumerate() {
                for l in 0..self.cols {
                    *slot = f.add(*slot, f.mul(self.get(i, l), other.get(l, j)));
                }
            }
            out.push(row);
        }
        let rows = out.into_iter().map(|r| FieldVector::from_reduced(f, r)).collect();
        Ok(FieldMatrix {
            field: f,
            cols: other.cols,
            rows,
        })
    }

    /// `self * self^T`, the Gram matrix of the rows.
    #[allow(clippy::needless_range_loop)]
    pub fn gram(&self) -> FieldMatrix {
        let k = self.nrows();
        let mut out = vec![vec![0u8; k]; k];
        for i in 0..k {
            for j in i..k {
                let v = self.rows[i].dot_unchecked(&self.rows[j]);
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        let rows = out
            .into_iter()
            .map(|r| FieldVector::from_reduced(self.field, r))
            .collect();
        FieldMatrix {
            field: self.field,
            cols: k,
            rows,
        }
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_field(other)?;
        if self.nrows() != other.nrows() || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldMatrix {
            field: self.field,
            cols: self.cols,
            rows,
        })
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: u8) -> FieldMatrix {
        FieldMatrix {
            field: self.field,
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    /// Column vector `u^T` times row vector `v`.
    pub fn outer(u: &FieldVector, v: &FieldVector) -> Result<FieldMatrix> {
        u.field.check_same(v.field)?;
        let rows = (0..u.len()).map(|i| v.scale(u.get(i))).collect();
        Ok(FieldMatrix {
            field: u.field,
            cols: v.len(),
            rows,
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_field(other)?;
        if self.nrows() != other.nrows() {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.nrows(),
                other.nrows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldMatrix {
            field: self.field,
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> FieldMatrix {
        FieldMatrix {
            field: self.field,
            cols: columns.len(),
            rows: self.rows.iter().map(|r| r.select(columns)).collect(),
        }
    }

    /// Row-vector times matrix, `v * self`.
    pub fn left_mul(&self, v: &FieldVector) -> Result<FieldVector> {
        if v.len() != self.nrows() {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.nrows(),
                self.cols
            )));
        }
        self.field.check_same(v.field)?;
        let mut acc = FieldVector::zeros(self.field, self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            let c = v.get(i);
            if c != 0 {
                acc.add_scaled_assign(r, c);
            }
        }
        Ok(acc)
    }

    /// Reduced row-echelon form (zero rows dropped) and the pivot columns in
    /// increasing order.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.field, self.cols, self.rows.clone());
        (
            FieldMatrix {
                field: self.field,
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// Gauss-Jordan elimination on owned rows.
pub(crate) fn rref_rows(field: PrimeField, cols: usize, mut rows: Vec<FieldVector>) -> (Vec<FieldVector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i].get(c) != 0) else {
            continue;
        };
        rows.swap(r, found);
        let lead = rows[r].get(c);
        if lead != 1 {
            rows[r].scale_assign(field.inv(lead));
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let v = row.get(c);
                if v != 0 {
                    row.add_scaled_assign(&pivot_row, field.neg(v));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
