mod common;

use common::*;
use hullcode::code::StandardForm;
use hullcode::transform::{m_matrix, mod4_weight_check, sign_variants, transform_rows, weight_identity_check};
use hullcode::{data, oracle, transform_code, Error, FieldVector, Guarantee, Mode, PrimeField, TransformPair};
use proptest::prelude::*;
use rand::Rng;

fn small_field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(gf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn isotropic_pairs_preserve_the_gram_matrix(f in small_field(), n in 6usize..=16, seed: u64) {
        let mut r = rng(seed);
        let k = r.random_range(1..=n - 4);
        let seed_form = random_code(&mut r, f, n, k).standard_form();
        let pair = isotropic_pair(&mut r, f, n - k);
        prop_assume!(pair.is_some());
        let pair = pair.unwrap();
        let out = transform_code(&seed_form, &pair, Mode::Checked(Guarantee::HullDimension)).unwrap().code;
        let before = seed_form.to_code();
        prop_assert_eq!(before.gram(), out.gram());
        prop_assert_eq!(before.hull_dim(), out.hull_dim());
        prop_assert_eq!(before.is_lcd(), out.is_lcd());
        prop_assert_eq!(before.is_self_orthogonal(), out.is_self_orthogonal());
    }

    #[test]
    fn rows_equal_a_times_m(f in small_field(), k in 1usize..10, m in 1usize..40, seed: u64) {
        let mut r = rng(seed);
        let a = matrix(&mut r, f, k, m);
        let pair = TransformPair::new(nonzero(&mut r, f, m), nonzero(&mut r, f, m)).unwrap();
        prop_assert_eq!(transform_rows(&a, &pair).unwrap(), a.matmul_symbolwise(&m_matrix(&pair)).unwrap());
    }

    #[test]
    fn sum_weight_identity(len in 1usize..300, seed: u64) {
        let mut r = rng(seed);
        let u = vector(&mut r, PrimeField::BINARY, len);
        let v = vector(&mut r, PrimeField::BINARY, len);
        prop_assert!(weight_identity_check(&u, &v).unwrap());
    }
}

#[test]
fn m_is_orthogonal_for_isotropic_pairs() {
    // M M^T = I
    let mut r = rng(31);
    for p in [2, 3, 5] {
        let f = gf(p);
        for _ in 0..50 {
            let Some(pair) = isotropic_pair(&mut r, f, 8) else {
                continue;
            };
            let m = m_matrix(&pair);
            let prod = m.matmul(&m.transpose()).unwrap();
            assert_eq!(prod, hullcode::FieldMatrix::identity(f, 8));
        }
    }
}

#[test]
fn sign_variants_give_two_codes() {
    let mut r = rng(32);
    for p in [3, 5] {
        let f = gf(p);
        let mut done = 0;
        while done < 20 {
            let sf = StandardForm::from_a(matrix(&mut r, f, 3, 4));
            let Some(pair) = isotropic_pair(&mut r, f, 4) else {
                continue;
            };
            let codes: Vec<_> = sign_variants(&pair)
                .unwrap()
                .iter()
                .map(|v| oracle::codeword_set(&transform_code(&sf, v, Mode::Unchecked).unwrap().code).unwrap())
                .collect();
            assert_eq!(codes[0], codes[1]);
            assert_eq!(codes[2], codes[3]);
            assert_eq!(codes[3], codes[4]);
            done += 1;
        }
    }
}

#[test]
fn binary_swap_gives_the_same_code() {
    // over F_2, M(y,x) = M(x,y) + (x^T y + y^T x) and the two extra terms cancel
    let mut r = rng(33);
    for _ in 0..100 {
        let sf = random_code(&mut r, PrimeField::BINARY, 14, 6).standard_form();
        let Some(pair) = isotropic_pair(&mut r, PrimeField::BINARY, 8) else {
            continue;
        };
        let a = transform_code(&sf, &pair, Mode::Unchecked).unwrap().code;
        let b = transform_code(&sf, &pair.swapped(), Mode::Unchecked).unwrap().code;
        assert!(a.same_code(&b));
        assert_eq!(pair.orbit_representative(), pair.swapped().orbit_representative());
    }
}

#[test]
fn mod4_rows_on_random_doubly_even_safe_pairs() {
    let mut r = rng(34);
    let f = PrimeField::BINARY;
    let mut done = 0;
    while done < 300 {
        let m = r.random_range(4..40);
        let x = nonzero(&mut r, f, m);
        let y = nonzero(&mut r, f, m);
        let Ok(pair) = TransformPair::new(x, y) else { continue };
        if !pair.is_de_safe() {
            continue;
        }
        let k = r.random_range(1..8);
        let a = matrix(&mut r, f, k, m);
        assert!(mod4_weight_check(&a, &pair).unwrap());
        done += 1;
    }
}

#[test]
fn all_ones_y_reduces_to_the_classical_row_rule() {
    // even binary codes with odd-weight A rows: r' = r + x + (r,x) 1
    let f = PrimeField::BINARY;
    let mut r = rng(35);
    let mut done = 0;
    while done < 100 {
        let m = 2 * r.random_range(2..10);
        let k = r.random_range(1..8);
        let a = matrix(&mut r, f, k, m);
        if a.rows().iter().any(|row| row.weight() % 2 == 0) {
            continue;
        }
        let x = nonzero(&mut r, f, m);
        if !x.weight().is_multiple_of(2) {
            continue;
        }
        let ones = FieldVector::ones(f, m);
        let pair = TransformPair::new(x.clone(), ones.clone()).unwrap();
        assert!(pair.is_isotropic());
        let out = transform_rows(&a, &pair).unwrap();
        for (row, new) in a.rows().iter().zip(out.rows()) {
            let mut expected = row.add(&x).unwrap();
            if row.inner_product(&x).unwrap() == 1 {
                expected = expected.add(&ones).unwrap();
            }
            assert_eq!(new, &expected);
        }
        let sf = StandardForm::from_a(a);
        assert!(sf.to_code().is_even().unwrap());
        assert!(transform_code(&sf, &pair, Mode::Checked(Guarantee::HullDimension))
            .unwrap()
            .code
            .is_even()
            .unwrap());
        done += 1;
    }
}

#[test]
fn doubly_even_transfer_on_the_extended_hamming_code() {
    let sf = hamming8().standard_form();
    let pair = TransformPair::new(bv("1111"), bv("1111")).unwrap();
    let out = transform_code(&sf, &pair, Mode::Checked(Guarantee::DoublyEven))
        .unwrap()
        .code;
    assert!(out.is_self_dual() && out.is_doubly_even().unwrap());
}

#[test]
fn hypotheses_are_enforced() {
    let sf = hamming8().standard_form();
    let not_isotropic = TransformPair::new(bv("1000"), bv("0100")).unwrap();
    assert!(matches!(
        transform_code(&sf, &not_isotropic, Mode::Checked(Guarantee::HullDimension)),
        Err(Error::Hypothesis(_))
    ));
    assert!(transform_code(&sf, &not_isotropic, Mode::Unchecked).is_ok());
    let wrong_len = TransformPair::new(bv("11"), bv("11")).unwrap();
    assert!(matches!(
        transform_code(&sf, &wrong_len, Mode::Unchecked),
        Err(Error::Dimension(_))
    ));
    assert!(matches!(
        TransformPair::new(bv("0000"), bv("1111")),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn lcd_improvements_reproduce() {
    for (block, pair, d0, d1) in data::LCD_REPRODUCTIONS {
        let sf = data::a_block(block).unwrap();
        let seed = sf.to_code();
        assert!(seed.is_lcd());
        assert_eq!(hullcode::min_weight(&seed, None).unwrap().exact(), Some(d0), "{block}");
        let pair = data::pair(pair).unwrap();
        assert!(pair.is_isotropic());
        let out = transform_code(&sf, &pair, Mode::Checked(Guarantee::HullDimension))
            .unwrap()
            .code;
        assert!(out.is_lcd());
        assert_eq!(hullcode::min_weight(&out, None).unwrap().exact(), Some(d1), "{block}");
    }
}
