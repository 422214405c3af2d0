mod common;

use common::*;
use hullcode::equivalence::{apply_witness, witness_is_valid};
use hullcode::invariant::{inequivalent_by_invariant, nt_from_codewords, profile, InvariantVerdict};
use hullcode::{
    is_equivalent, nt_sequence, oracle, Equivalence, EquivalenceOptions, Error, FieldVector, LinearCode, PrimeField,
};
use proptest::prelude::*;
use rand::Rng;

fn words_of_weight(code: &LinearCode, w: usize) -> Vec<FieldVector> {
    code.codewords()
        .unwrap()
        .into_iter()
        .filter(|c| c.weight() == w)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mask_counts_match_the_quadruple_loop(n in 4usize..=12, seed: u64) {
        let mut r = rng(seed);
        let k = r.random_range(1..n);
        let c = random_code(&mut r, PrimeField::BINARY, n, k);
        for w in 1..=n {
            let naive: Vec<u64> = oracle::nt_histogram(n, &words_of_weight(&c, w)).into_iter().skip(1).collect();
            prop_assert_eq!(nt_sequence(&c, w).unwrap().counts, naive);
        }
    }

    #[test]
    fn sequences_survive_column_permutations(n in 5usize..=14, seed: u64) {
        let mut r = rng(seed);
        let k = r.random_range(1..n);
        let c = random_code(&mut r, PrimeField::BINARY, n, k);
        let p = c.permute_columns(&shuffled(&mut r, n)).unwrap();
        let fc = profile(&c).unwrap();
        let fp = profile(&p).unwrap();
        prop_assert_eq!(&fc.fingerprint, &fp.fingerprint);
        prop_assert_eq!(fc.nt, fp.nt);
    }

    #[test]
    fn permuted_codes_are_found_equivalent(n in 4usize..=16, seed: u64) {
        let mut r = rng(seed);
        let k = r.random_range(1..n);
        let c = random_code(&mut r, PrimeField::BINARY, n, k);
        let p = c.permute_columns(&shuffled(&mut r, n)).unwrap();
        match is_equivalent(&c, &p, EquivalenceOptions::default()).unwrap() {
            Equivalence::Equivalent(w) => {
                prop_assert!(witness_is_valid(&c, &p, &w));
                for row in c.generator().rows() {
                    prop_assert!(p.contains(&apply_witness(row, &w)).unwrap());
                }
            }
            other => prop_assert!(false, "expected equivalent, got {:?}", other),
        }
    }
}

#[test]
fn equivalence_agrees_with_brute_force() {
    let mut r = rng(51);
    let f = PrimeField::BINARY;
    let (mut eq, mut ineq) = (0, 0);
    for i in 0..45 {
        let n = [6, 7, 8][i % 3];
        let k = r.random_range(2..=n - 2);
        let a = random_code(&mut r, f, n, k);
        let b = match i % 3 {
            0 => a.permute_columns(&shuffled(&mut r, n)).unwrap(),
            _ => random_code(&mut r, f, n, k),
        };
        let brute = oracle::brute_force_equivalence(&a, &b).unwrap();
        match is_equivalent(&a, &b, EquivalenceOptions::default()).unwrap() {
            Equivalence::Equivalent(w) => {
                assert!(brute.is_some(), "pair {i}");
                assert!(witness_is_valid(&a, &b, &w));
                eq += 1;
            }
            Equivalence::Inequivalent => {
                assert!(brute.is_none(), "pair {i}");
                ineq += 1;
            }
            Equivalence::Unknown => panic!("pair {i}: budget exhausted"),
        }
    }
    assert!(eq > 0 && ineq > 0);
}

#[test]
fn distinct_sequences_certify_inequivalence() {
    // two [8,4] codes with equal weight distributions that the brute force
    // search separates
    let mut r = rng(52);
    let f = PrimeField::BINARY;
    let mut found = false;
    for _ in 0..2000 {
        let a = random_code(&mut r, f, 8, 4);
        let b = random_code(&mut r, f, 8, 4);
        if oracle::weight_counts(&a).unwrap() != oracle::weight_counts(&b).unwrap() {
            continue;
        }
        let separated = (4..=8).any(|w| {
            matches!(
                inequivalent_by_invariant(&a, &b, w).unwrap(),
                InvariantVerdict::Inequivalent { .. }
            )
        });
        if separated {
            assert_eq!(oracle::brute_force_equivalence(&a, &b).unwrap(), None);
            assert_eq!(
                is_equivalent(&a, &b, EquivalenceOptions::default()).unwrap(),
                Equivalence::Inequivalent
            );
            found = true;
            break;
        }
    }
    assert!(found, "no pair separated by the invariant");
}

#[test]
fn hamming_sequence_under_all_sampled_permutations() {
    let h = hamming8();
    let base = nt_sequence(&h, 4).unwrap();
    assert_eq!(base.counts, vec![14]);
    let mut r = rng(53);
    for _ in 0..50 {
        let p = h.permute_columns(&shuffled(&mut r, 8)).unwrap();
        assert_eq!(nt_sequence(&p, 4).unwrap(), base);
    }
}

#[test]
fn incidence_from_explicit_words() {
    let words: Vec<_> = words_of_weight(&hamming8(), 4)
        .into_iter()
        .map(|w| w.as_bits().unwrap().clone())
        .collect();
    assert_eq!(nt_from_codewords(8, 4, 4, &words).counts, vec![14]);
}

#[test]
fn equivalence_rejects_other_fields() {
    let c = LinearCode::full_space(gf(3), 3);
    assert!(matches!(
        is_equivalent(&c, &c, EquivalenceOptions::default()),
        Err(Error::UnsupportedField(3))
    ));
}
