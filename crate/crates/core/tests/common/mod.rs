#![allow(dead_code)]

use hullcode::{FieldMatrix, FieldVector, LinearCode, PrimeField, TransformPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn bv(s: &str) -> FieldVector {
    FieldVector::parse(PrimeField::BINARY, s).unwrap()
}

pub fn code(text: &str) -> LinearCode {
    LinearCode::new(FieldMatrix::parse_rows(PrimeField::BINARY, text).unwrap()).unwrap()
}

pub fn hamming8() -> LinearCode {
    code("10000111\n01001011\n00101101\n00011110")
}

pub fn hamming7() -> LinearCode {
    code("1000111\n0100110\n0010101\n0001011")
}

pub fn vector(rng: &mut ChaCha8Rng, f: PrimeField, len: usize) -> FieldVector {
    let s: Vec<u8> = (0..len).map(|_| rng.random_range(0..f.p())).collect();
    FieldVector::from_symbols(f, &s).unwrap()
}

pub fn nonzero(rng: &mut ChaCha8Rng, f: PrimeField, len: usize) -> FieldVector {
    loop {
        let v = vector(rng, f, len);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn matrix(rng: &mut ChaCha8Rng, f: PrimeField, rows: usize, cols: usize) -> FieldMatrix {
    let rows = (0..rows).map(|_| vector(rng, f, cols)).collect();
    FieldMatrix::from_rows(f, cols, rows).unwrap()
}

pub fn random_code(rng: &mut ChaCha8Rng, f: PrimeField, n: usize, k: usize) -> LinearCode {
    loop {
        if let Ok(c) = LinearCode::new(matrix(rng, f, k, n)) {
            return c;
        }
    }
}

/// Nonzero isotropic pair, or `None` if none turned up.
pub fn isotropic_pair(rng: &mut ChaCha8Rng, f: PrimeField, m: usize) -> Option<TransformPair> {
    let mut pick =
        |ok: &dyn Fn(&FieldVector) -> bool| (0..5000).map(|_| vector(rng, f, m)).find(|v| !v.is_zero() && ok(v));
    let x = pick(&|v| v.inner_product(v).unwrap() == 0)?;
    let y = pick(&|v| v.inner_product(v).unwrap() == 0 && v.inner_product(&x).unwrap() == 0)?;
    TransformPair::new(x, y).ok()
}

pub fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
