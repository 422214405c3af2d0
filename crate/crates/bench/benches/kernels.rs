use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hullcode::invariant::{nt_from_codewords, ColumnIncidence};
use hullcode::minweight::{codewords_of_weight, min_weight};
use hullcode::transform::{transform_code, Mode};
use hullcode::{data, weight_distribution};
use hullcode_bench::{d11, systematic_code};

fn gray_walk(c: &mut Criterion) {
    let mut g = c.benchmark_group("gray_walk");
    g.sample_size(10);
    for k in [16usize, 20, 24] {
        let code = systematic_code(2 * k, k, k as u64);
        g.bench_with_input(BenchmarkId::new("distribution", k), &code, |b, code| {
            b.iter(|| weight_distribution(black_box(code)).unwrap())
        });
    }
    let lcd = data::a_block_code("a37225").unwrap();
    g.bench_function("min_weight_37_22", |b| {
        b.iter(|| min_weight(black_box(&lcd), None).unwrap())
    });
    g.finish();
}

fn nt_sequence(c: &mut Criterion) {
    let words = codewords_of_weight(&d11(), 12).unwrap();
    let mut g = c.benchmark_group("nt");
    g.sample_size(10);
    g.bench_function("d11_weight12", |b| {
        b.iter(|| nt_from_codewords(56, 28, 12, black_box(&words)))
    });
    let inc = ColumnIncidence::new(56, &words);
    g.bench_function("coverage_4", |b| b.iter(|| inc.coverage(black_box(&[3, 17, 29, 41]))));
    g.finish();
}

fn transform(c: &mut Criterion) {
    let sf = d11().standard_form();
    let pair = hullcode::TransformPair::new(
        hullcode::FieldVector::parse(hullcode::PrimeField::BINARY, "1111000000000000000000000000").unwrap(),
        hullcode::search::make_yi(28, 4).unwrap(),
    )
    .unwrap();
    c.bench_function("transform_d11", |b| {
        b.iter(|| transform_code(black_box(&sf), black_box(&pair), Mode::Unchecked).unwrap())
    });
}

criterion_group!(benches, gray_walk, nt_sequence, transform);
criterion_main!(benches);
