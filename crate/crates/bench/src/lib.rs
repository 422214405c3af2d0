//! Fixtures shared by the benchmarks.

use hullcode::{bordered_double_circulant, CirculantSpec, FieldMatrix, FieldVector, LinearCode, PrimeField};

pub fn d11() -> LinearCode {
    bordered_double_circulant(&CirculantSpec::builtin("D11").expect("bundled seed"))
}

/// A deterministic pseudo-random binary `[n, k]` code in systematic form.
pub fn systematic_code(n: usize, k: usize, seed: u64) -> LinearCode {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let rows = (0..k)
        .map(|_| {
            let s: Vec<u8> = (0..n - k).map(|_| (next() & 1) as u8).collect();
            FieldVector::from_symbols(PrimeField::BINARY, &s).expect("bits")
        })
        .collect();
    let a = FieldMatrix::from_rows(PrimeField::BINARY, n - k, rows).expect("shape");
    LinearCode::from_systematic(&a).expect("systematic")
}
