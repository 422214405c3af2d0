//! Pure and bordered double circulant codes.

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, FieldVector, PrimeField};

/// First rows of the six extremal bordered double circulant doubly even
/// `[56,28,12]` seed codes.
pub const SEED_ROWS: [(&str, &str); 6] = [
    ("D11", "000101011011111000111111111"),
    ("C56.1", "000000000000110010101111011"),
    ("C56.2", "000000001011011111110010111"),
    ("C56.3", "000000010011100111101110111"),
    ("C56.4", "000000011011001001111101111"),
    ("C56.5", "000000101001111101011101011"),
];

/// A circulant matrix given by its first row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSpec {
    first_row: FieldVector,
}

impl CirculantSpec {
    pub fn new(first_row: FieldVector) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::Dimension("circulant first row must be non-empty".into()));
        }
        Ok(CirculantSpec { first_row })
    }

    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        Self::new(FieldVector::parse(field, text)?)
    }

    /// One of the bundled seeds by name (`D11`, `C56.1` .. `C56.5`).
    pub fn builtin(name: &str) -> Result<Self> {
        SEED_ROWS
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, row)| Self::parse(PrimeField::BINARY, row).expect("bundled rows parse"))
            .ok_or_else(|| Error::UnknownArtifact(name.to_string()))
    }

    pub fn first_row(&self) -> &FieldVector {
        &self.first_row
    }

    pub fn len(&self) -> usize {
        self.first_row.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Row `i` is the first row rotated right by `i` positions.
pub fn circulant_matrix(spec: &CirculantSpec) -> FieldMatrix {
    let l = spec.len();
    let field = spec.first_row.field();
    let first = spec.first_row.to_symbols();
    let rows: Vec<Vec<u8>> = (0..l)
        .map(|i| (0..l).map(|j| first[(j + l - i) % l]).collect())
        .collect();
    FieldMatrix::from_symbol_rows(field, &rows).expect("symbols already reduced")
}

/// `[I_l | R]`.
pub fn pure_double_circulant(spec: &CirculantSpec) -> LinearCode {
    LinearCode::from_systematic(&circulant_matrix(spec)).expect("systematic")
}

/// `[I_{l+1} | B]` where `B` has first row `(0, 1, ..., 1)` and the
/// remaining rows are `(1 | R)`.
pub fn bordered_double_circulant(spec: &CirculantSpec) -> LinearCode {
    LinearCode::from_systematic(&bordered_block(spec)).expect("systematic")
}

/// The `(l+1) x (l+1)` right-hand block of the bordered construction.
pub fn bordered_block(spec: &CirculantSpec) -> FieldMatrix {
    let l = spec.len();
    let r = circulant_matrix(spec);
    let mut rows = Vec::with_capacity(l + 1);
    let mut top = vec![1u8; l + 1];
    top[0] = 0;
    rows.push(top);
    for i in 0..l {
        let mut row = Vec::with_capacity(l + 1);
        row.push(1);
        row.extend(r.row(i).to_symbols());
        rows.push(row);
    }
    FieldMatrix::from_symbol_rows(spec.first_row.field(), &rows).expect("reduced")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> CirculantSpec {
        CirculantSpec::parse(PrimeField::BINARY, s).unwrap()
    }

    #[test]
    fn circulant_shifts_right() {
        assert_eq!(
            circulant_matrix(&spec("100")),
            FieldMatrix::identity(PrimeField::BINARY, 3)
        );
        assert_eq!(circulant_matrix(&spec("110")).to_string(), "110\n011\n101\n");
    }

    #[test]
    fn pure_examples() {
        let c = pure_double_circulant(&spec("1"));
        assert_eq!(c.generator().to_string(), "11\n");
        let c = pure_double_circulant(&spec("110"));
        assert_eq!((c.n(), c.k()), (6, 3));
        assert!(c.standard_form().is_identity_permutation());
    }

    #[test]
    fn bordered_length_one() {
        let c = bordered_double_circulant(&spec("1"));
        assert_eq!(c.generator().to_string(), "1001\n0111\n");
        let words: Vec<String> = c.codewords().unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["0000", "0111", "1001", "1110"]);
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(CirculantSpec::builtin("d11").unwrap().len(), 27);
        assert!(matches!(
            CirculantSpec::builtin("C56.9"),
            Err(Error::UnknownArtifact(_))
        ));
    }

    #[test]
    fn builtin_seeds_are_doubly_even_self_dual() {
        for (name, _) in SEED_ROWS {
            let c = bordered_double_circulant(&CirculantSpec::builtin(name).unwrap());
            assert_eq!((c.n(), c.k()), (56, 28), "{name}");
            assert!(c.is_self_dual(), "{name}");
            assert!(c.is_doubly_even().unwrap(), "{name}");
            assert!(c.dual().same_code(&c), "{name}");
        }
    }
}
