//! Matrices and vectors reproduced from published constructions.
//!
//! Payloads are stored in this crate's text formats: one row of symbols per
//! line for matrices, and `x=...` / `y=...` lines for transform pairs.

use crate::circulant::SEED_ROWS;
use crate::code::{LinearCode, StandardForm};
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, PrimeField};
use crate::transform::TransformPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    /// First row of a bordered double circulant `[56,28]` code.
    CirculantSeed,
    /// The `A` block of a generator `[I_k | A]`.
    GeneratorABlock,
    TransformPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundledArtifact {
    pub name: &'static str,
    pub kind: ArtifactKind,
    pub payload: &'static str,
}

const A37225: &str = "\
000110111001011\n\
100100110001100\n\
011100010000100\n\
001110001000010\n\
001001001100011\n\
111101001100101\n\
000011111101010\n\
100101001111001\n\
101011001101000\n\
111111011111010\n\
011111101111101\n\
111000010101000\n\
111000111011000\n\
010010010101110\n\
000111000010101\n\
111010001011110\n\
110111111100001\n\
101100011100110\n\
110010111111111\n\
100000110101011\n\
001101000001101\n\
010101110011100\n";

const A381310: &str = "\
1101001110101100011010111\n\
0010011101001101111011001\n\
1000111010010001010001001\n\
1101101001111111000100001\n\
1111000000001000001110101\n\
1110010100110011101011111\n\
1110111110101110011001010\n\
1010010001111011010110010\n\
1010011011011100001010111\n\
1110100100010100010010111\n\
1110100110111101100101110\n\
0111010011011110110010111\n\
0111010011110100101111001\n";

const A40226: &str = "\
010111001011101001\n\
011100100111010110\n\
001011001011101100\n\
110010010010001001\n\
000110111001101111\n\
000001100100101101\n\
001111111001011111\n\
100101000000000011\n\
101011011001101010\n\
010100011111010000\n\
101100110000010100\n\
011010010101010110\n\
011011011101000100\n\
001010001100001010\n\
010100000000111001\n\
110110011100011011\n\
111000011001011111\n\
000000110101101010\n\
101101110011011100\n\
001001010100000011\n\
010110110100111100\n\
001001101110010111\n";

const C37226: &str = "x=010110011011111\ny=110010110000001\n";
const C381311: &str = "x=0010011100110001011000100\ny=1110100001110101110001101\n";
const C40227: &str = "x=101111011011010011\ny=001011100011100001\n";

/// The three LCD seeds with their pairs: `(A block, pair, seed d, transformed d)`.
pub const LCD_REPRODUCTIONS: [(&str, &str, usize, usize); 3] = [
    ("a37225", "c37226", 5, 6),
    ("a381310", "c381311", 10, 11),
    ("a40226", "c40227", 6, 7),
];

static ARTIFACTS: [BundledArtifact; 12] = [
    seed(0),
    seed(1),
    seed(2),
    seed(3),
    seed(4),
    seed(5),
    BundledArtifact {
        name: "a37225",
        kind: ArtifactKind::GeneratorABlock,
        payload: A37225,
    },
    BundledArtifact {
        name: "a381310",
        kind: ArtifactKind::GeneratorABlock,
        payload: A381310,
    },
    BundledArtifact {
        name: "a40226",
        kind: ArtifactKind::GeneratorABlock,
        payload: A40226,
    },
    BundledArtifact {
        name: "c37226",
        kind: ArtifactKind::TransformPair,
        payload: C37226,
    },
    BundledArtifact {
        name: "c381311",
        kind: ArtifactKind::TransformPair,
        payload: C381311,
    },
    BundledArtifact {
        name: "c40227",
        kind: ArtifactKind::TransformPair,
        payload: C40227,
    },
];

const fn seed(i: usize) -> BundledArtifact {
    BundledArtifact {
        name: SEED_ROWS[i].0,
        kind: ArtifactKind::CirculantSeed,
        payload: SEED_ROWS[i].1,
    }
}

pub fn artifacts() -> &'static [BundledArtifact] {
    &ARTIFACTS
}

pub fn artifact(name: &str) -> Result<&'static BundledArtifact> {
    ARTIFACTS
        .iter()
        .find(|a| a.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownArtifact(name.to_string()))
}

/// A bundled `A` block as a standard form with identity permutation.
pub fn a_block(name: &str) -> Result<StandardForm> {
    let a = artifact(name)?;
    if a.kind != ArtifactKind::GeneratorABlock {
        return Err(Error::UnknownArtifact(format!("{name} is not a generator block")));
    }
    Ok(StandardForm::from_a(FieldMatrix::parse_rows(
        PrimeField::BINARY,
        a.payload,
    )?))
}

pub fn a_block_code(name: &str) -> Result<LinearCode> {
    Ok(a_block(name)?.to_code())
}

pub fn pair(name: &str) -> Result<TransformPair> {
    let a = artifact(name)?;
    if a.kind != ArtifactKind::TransformPair {
        return Err(Error::UnknownArtifact(format!("{name} is not a transform pair")));
    }
    TransformPair::parse(PrimeField::BINARY, a.payload)
}
