//! The hull-preserving row transform.
//!
//! For a code with generator `[I_k | A]` and vectors `x, y` of length
//! `m = n - k`, every row `r` of `A` is replaced by
//! `r + (r, y) x - (r, x) y`. Equivalently `A(x, y) = A M(x, y)` with
//! `M(x, y) = I_m + y^T x - x^T y`.
//!
//! When `(x,x) = (y,y) = (x,y) = 0` the Gram matrix of the generator is
//! unchanged, so the hull dimension (and with it the LCD and
//! self-orthogonal properties) carries over. Over GF(2), if in addition the
//! weights of `x` and `y` are divisible by four, double evenness carries over.

use std::fmt;

use crate::code::{LinearCode, StandardForm};
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, FieldVector, PrimeField};

/// A validated `(x, y)` pair with its hypothesis flags computed from the
/// vectors themselves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransformPair {
    x: FieldVector,
    y: FieldVector,
    isotropic: bool,
    de_safe: bool,
}

impl TransformPair {
    pub fn new(x: FieldVector, y: FieldVector) -> Result<Self> {
        let xy = x.inner_product(&y)?;
        if x.is_zero() || y.is_zero() {
            return Err(Error::Hypothesis(
                "x and y must be nonzero; a zero vector leaves A unchanged".into(),
            ));
        }
        let xx = x.inner_product(&x)?;
        let yy = y.inner_product(&y)?;
        let isotropic = xx == 0 && yy == 0 && xy == 0;
        let de_safe = x.field().is_binary() && x.weight().is_multiple_of(4) && y.weight().is_multiple_of(4) && xy == 0;
        Ok(TransformPair {
            x,
            y,
            isotropic,
            de_safe,
        })
    }

    /// Parses the two-line `x=...` / `y=...` format.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let mut x = None;
        let mut y = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: "expected `x=...` or `y=...`".into(),
            })?;
            let v = FieldVector::parse(field, value).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            let slot = match key.trim() {
                "x" => &mut x,
                "y" => &mut y,
                other => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("unknown key `{other}`"),
                    })
                }
            };
            if slot.replace(v).is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("duplicate `{}`", key.trim()),
                });
            }
        }
        match (x, y) {
            (Some(x), Some(y)) => TransformPair::new(x, y),
            _ => Err(Error::Parse {
                line: 1,
                message: "both `x=` and `y=` lines are required".into(),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        format!("x={}\ny={}\n", self.x, self.y)
    }

    pub fn x(&self) -> &FieldVector {
        &self.x
    }

    pub fn y(&self) -> &FieldVector {
        &self.y
    }

    /// `(x,x) = (y,y) = (x,y) = 0`.
    pub fn is_isotropic(&self) -> bool {
        self.isotropic
    }

    /// Binary, `wt(x) = wt(y) = 0 mod 4` and `(x,y) = 0`.
    pub fn is_de_safe(&self) -> bool {
        self.de_safe
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.x.field()
    }

    /// The pair with its vectors swapped.
    pub fn swapped(&self) -> TransformPair {
        TransformPair::new(self.y.clone(), self.x.clone()).expect("flags are symmetric")
    }

    /// Canonical representative of the pairs sharing this pair's `M(x, y)`:
    /// `(x,y)`, `(-x,-y)`, `(y,-x)` and `(-y,x)`.
    pub fn orbit_representative(&self) -> TransformPair {
        let (x, y) = (&self.x, &self.y);
        let candidates = [
            (x.clone(), y.clone()),
            (x.neg(), y.neg()),
            (y.clone(), x.neg()),
            (y.neg(), x.clone()),
        ];
        let (x, y) = candidates
            .into_iter()
            .min_by(|a, b| (a.0.to_symbols(), a.1.to_symbols()).cmp(&(b.0.to_symbols(), b.1.to_symbols())))
            .expect("non-empty");
        TransformPair::new(x, y).expect("negation and swapping keep the pair valid")
    }
}

impl fmt::Display for TransformPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} y={}", self.x, self.y)
    }
}

fn check_width(a: &FieldMatrix, pair: &TransformPair) -> Result<()> {
    if a.field() != pair.field() {
        return Err(Error::FieldMismatch {
            left: a.field().p(),
            right: pair.field().p(),
        });
    }
    if a.ncols() != pair.len() {
        return Err(Error::Dimension(format!(
            "A has {} columns but the pair has length {}",
            a.ncols(),
            pair.len()
        )));
    }
    Ok(())
}

/// `A(x, y)`: each row `r` becomes `r + (r,y) x - (r,x) y`.
pub fn transform_rows(a: &FieldMatrix, pair: &TransformPair) -> Result<FieldMatrix> {
    check_width(a, pair)?;
    let f = a.field();
    let rows = a
        .rows()
        .iter()
        .map(|r| {
            let ry = r.dot_unchecked(&pair.y);
            let rx = r.dot_unchecked(&pair.x);
            let mut out = r.clone();
            out.add_scaled_assign(&pair.x, ry);
            // over GF(2) the negation is the identity
            out.add_scaled_assign(&pair.y, f.neg(rx));
            out
        })
        .collect();
    FieldMatrix::from_rows(f, a.ncols(), rows)
}

/// `M(x, y) = I_m + y^T x - x^T y`.
pub fn m_matrix(pair: &TransformPair) -> FieldMatrix {
    let id = FieldMatrix::identity(pair.field(), pair.len());
    let yx = FieldMatrix::outer(&pair.y, &pair.x).expect("same field");
    let xy = FieldMatrix::outer(&pair.x, &pair.y).expect("same field");
    id.add(&yx).and_then(|m| m.sub(&xy)).expect("square m x m")
}

/// Which theorem a checked transform must honour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    /// Hull dimension preserved; needs an isotropic pair.
    HullDimension,
    /// Hull dimension preserved and double evenness transferred; needs a
    /// binary pair with weights divisible by four and `(x,y) = 0`.
    DoublyEven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Require the hypothesis and verify the conclusion on the result.
    Checked(Guarantee),
    /// Apply the formula to any pair.
    Unchecked,
}

/// The output of [`transform_code`], in the standard form's permuted
/// coordinates.
#[derive(Clone, Debug)]
pub struct Transformed {
    pub code: LinearCode,
    /// Copied from the seed's [`StandardForm`]: position `i` of `code`
    /// corresponds to original seed coordinate `column_permutation[i]`.
    pub column_permutation: Vec<usize>,
}

/// Builds `C(A(x,y))`, the code generated by `[I_k | A(x,y)]`.
pub fn transform_code(seed: &StandardForm, pair: &TransformPair, mode: Mode) -> Result<Transformed> {
    let a = seed.a();
    check_width(a, pair)?;
    if let Mode::Checked(g) = mode {
        match g {
            Guarantee::HullDimension if !pair.is_isotropic() => {
                return Err(Error::Hypothesis(format!(
                    "hull preservation needs (x,x) = (y,y) = (x,y) = 0; got {pair}"
                )))
            }
            Guarantee::DoublyEven if !pair.is_de_safe() => {
                return Err(Error::Hypothesis(format!(
                    "doubly even transfer needs a binary pair with wt(x), wt(y) = 0 mod 4 and (x,y) = 0; got {pair}"
                )))
            }
            _ => {}
        }
    }
    let a2 = transform_rows(a, pair)?;
    let code = LinearCode::from_systematic(&a2)?;
    if let Mode::Checked(g) = mode {
        let seed_code = seed.to_code();
        verify_hull(&seed_code, &code)?;
        if g == Guarantee::DoublyEven {
            let before = seed_code.is_doubly_even()?;
            let after = code.is_doubly_even()?;
            if before != after {
                return Err(Error::TheoremViolation(format!(
                    "doubly even: seed {before}, transformed {after}"
                )));
            }
        }
    }
    Ok(Transformed {
        code,
        column_permutation: seed.column_permutation().to_vec(),
    })
}

fn verify_hull(seed: &LinearCode, out: &LinearCode) -> Result<()> {
    if seed.gram() != out.gram() {
        return Err(Error::TheoremViolation("G G^T changed under an isotropic pair".into()));
    }
    let (h0, h1) = (seed.hull_dim(), out.hull_dim());
    if h0 != h1 {
        return Err(Error::TheoremViolation(format!("hull dimension {h0} became {h1}")));
    }
    Ok(())
}

/// `[(x,y), (-x,-y), (y,x), (x,-y), (-x,y)]`. The first two give the same
/// code, and so do the last three.
pub fn sign_variants(pair: &TransformPair) -> Result<Vec<TransformPair>> {
    if !pair.is_isotropic() {
        return Err(Error::Hypothesis("sign identities need an isotropic pair".into()));
    }
    let (x, y) = (&pair.x, &pair.y);
    [
        (x.clone(), y.clone()),
        (x.neg(), y.neg()),
        (y.clone(), x.clone()),
        (x.clone(), y.neg()),
        (x.neg(), y.clone()),
    ]
    .into_iter()
    .map(|(a, b)| TransformPair::new(a, b))
    .collect()
}

/// `wt(u + v) = wt(u) + wt(v) - 2 wt(u * v)` for binary vectors.
pub fn weight_identity_check(u: &FieldVector, v: &FieldVector) -> Result<bool> {
    if !u.field().is_binary() {
        return Err(Error::UnsupportedField(u.field().p()));
    }
    let sum = u.add(v)?;
    let prod = u.hadamard(v)?;
    Ok(sum.weight() as i64 == u.weight() as i64 + v.weight() as i64 - 2 * prod.weight() as i64)
}

/// Every row of `A(x, y)` has the weight of the matching row of `A` modulo 4.
pub fn mod4_weight_check(a: &FieldMatrix, pair: &TransformPair) -> Result<bool> {
    if !pair.field().is_binary() {
        return Err(Error::UnsupportedField(pair.field().p()));
    }
    if !pair.is_de_safe() {
        return Err(Error::Precondition(
            "needs wt(x) = wt(y) = 0 mod 4 and (x,y) = 0".into(),
        ));
    }
    let a2 = transform_rows(a, pair)?;
    Ok(a.rows()
        .iter()
        .zip(a2.rows())
        .all(|(r, r2)| r.weight() % 4 == r2.weight() % 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> FieldVector {
        FieldVector::parse(PrimeField::BINARY, s).unwrap()
    }

    #[test]
    fn flags_follow_vectors() {
        let p = TransformPair::new(bv("0011"), bv("0101")).unwrap();
        assert!(!p.is_isotropic());
        assert!(!p.is_de_safe());
        let p = TransformPair::new(bv("1111"), bv("1111")).unwrap();
        assert!(p.is_isotropic());
        assert!(p.is_de_safe());
        let p = TransformPair::new(bv("1100"), bv("0011")).unwrap();
        assert!(p.is_isotropic());
        assert!(!p.is_de_safe());
    }

    #[test]
    fn zero_vectors_rejected() {
        assert!(matches!(
            TransformPair::new(bv("0000"), bv("0011")),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            TransformPair::new(bv("000"), bv("0011")),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn orthogonal_rows_are_fixed() {
        let a = FieldMatrix::parse_rows(PrimeField::BINARY, "1000").unwrap();
        let pair = TransformPair::new(bv("0011"), bv("0101")).unwrap();
        assert_eq!(transform_rows(&a, &pair).unwrap(), a);
    }

    #[test]
    fn m_matrix_examples() {
        let p = TransformPair::new(bv("1011"), bv("1011")).unwrap();
        assert_eq!(m_matrix(&p), FieldMatrix::identity(PrimeField::BINARY, 4));

        let f3 = PrimeField::new(3).unwrap();
        let x = FieldVector::from_symbols(f3, &[1, 0]).unwrap();
        let y = FieldVector::from_symbols(f3, &[0, 1]).unwrap();
        let m = m_matrix(&TransformPair::new(x, y).unwrap());
        assert_eq!(m, FieldMatrix::from_symbol_rows(f3, &[vec![1, 2], vec![1, 1]]).unwrap());
    }

    #[test]
    fn checked_mode_requires_flags() {
        let sf = StandardForm::from_a(FieldMatrix::parse_rows(PrimeField::BINARY, "0111\n1011").unwrap());
        let pair = TransformPair::new(bv("0011"), bv("0101")).unwrap();
        assert!(matches!(
            transform_code(&sf, &pair, Mode::Checked(Guarantee::HullDimension)),
            Err(Error::Hypothesis(_))
        ));
        assert!(transform_code(&sf, &pair, Mode::Unchecked).is_ok());
        let iso = TransformPair::new(bv("1100"), bv("0011")).unwrap();
        assert!(transform_code(&sf, &iso, Mode::Checked(Guarantee::HullDimension)).is_ok());
        assert!(matches!(
            transform_code(&sf, &iso, Mode::Checked(Guarantee::DoublyEven)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn sign_variants_need_isotropy() {
        let pair = TransformPair::new(bv("0011"), bv("0101")).unwrap();
        assert!(sign_variants(&pair).is_err());
        let iso = TransformPair::new(bv("1100"), bv("0011")).unwrap();
        let v = sign_variants(&iso).unwrap();
        assert_eq!(v.len(), 5);
        // over F_2 negation is trivial
        assert_eq!(v[0], v[1]);
        assert_eq!(v[0], v[3]);
        assert_eq!(v[0], v[4]);
        assert_eq!(v[2], iso.swapped());
    }

    #[test]
    fn weight_identity_examples() {
        let u = bv("1100");
        assert!(weight_identity_check(&u, &u).unwrap());
        assert!(weight_identity_check(&u, &bv("0110")).unwrap());
        let f3 = PrimeField::new(3).unwrap();
        let w = FieldVector::zeros(f3, 2);
        assert!(weight_identity_check(&w, &w).is_err());
    }

    #[test]
    fn mod4_check_precondition() {
        let a = FieldMatrix::parse_rows(PrimeField::BINARY, "1000").unwrap();
        let bad = TransformPair::new(bv("1100"), bv("0011")).unwrap();
        assert!(matches!(mod4_weight_check(&a, &bad), Err(Error::Precondition(_))));
        let good = TransformPair::new(bv("1111"), bv("1111")).unwrap();
        assert!(mod4_weight_check(&a, &good).unwrap());
    }

    #[test]
    fn pair_text_round_trip() {
        let p = TransformPair::parse(PrimeField::BINARY, "x=(0 1 0 1)\ny=1100\n").unwrap();
        assert_eq!(p.to_text(), "x=0101\ny=1100\n");
        assert!(TransformPair::parse(PrimeField::BINARY, "x=0101\n").is_err());
        assert!(TransformPair::parse(PrimeField::BINARY, "x=0101\nz=1100").is_err());
    }
}
