//! Reproduction checks for the published constructions and the algebraic
//! identities behind them. Each check is deterministic (fixed generator
//! seeds) and reports pass or fail with a short detail line.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::circulant::{bordered_double_circulant, CirculantSpec, SEED_ROWS};
use crate::code::{LinearCode, StandardForm};
use crate::data;
use crate::equivalence::{is_equivalent, witness_is_valid, Equivalence, EquivalenceOptions};
use crate::field::{FieldMatrix, FieldVector, PrimeField};
use crate::invariant::{nt_sequence, ColumnIncidence};
use crate::minweight::{self, MinWeight};
use crate::oracle;
use crate::search::{make_yi, replay, sd_search, CandidateSource, SdSearch, SeedStore, XFilter};
use crate::transform::{
    m_matrix, mod4_weight_check, transform_code, transform_rows, weight_identity_check, Mode, TransformPair,
};

type Outcome = std::result::Result<String, String>;

/// One numbered check.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    run: fn() -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1000.0).round() / 1000.0)
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.1}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

impl Check {
    pub fn run(&self) -> CheckResult {
        let start = Instant::now();
        let outcome = (self.run)();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckResult {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed,
        }
    }
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: 1,
            name: "circulant seeds",
            run: circulant_seeds,
        },
        Check {
            id: 2,
            name: "LCD reproduction",
            run: lcd_reproduction,
        },
        Check {
            id: 3,
            name: "hull preservation",
            run: hull_preservation,
        },
        Check {
            id: 4,
            name: "row formula vs A*M",
            run: row_formula,
        },
        Check {
            id: 5,
            name: "sign identities",
            run: sign_identities,
        },
        Check {
            id: 6,
            name: "doubly even micro-check",
            run: doubly_even_micro,
        },
        Check {
            id: 7,
            name: "weight identities",
            run: weight_identities,
        },
        Check {
            id: 8,
            name: "N_t correctness",
            run: nt_correctness,
        },
        Check {
            id: 9,
            name: "equivalence vs brute force",
            run: equivalence_oracle,
        },
        Check {
            id: 10,
            name: "self-dual search replay",
            run: search_replay,
        },
    ]
}

pub fn run_all() -> Vec<CheckResult> {
    checks().iter().map(Check::run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::error::Error) -> String {
    e.to_string()
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

fn random_vector(rng: &mut ChaCha8Rng, f: PrimeField, len: usize) -> FieldVector {
    let s: Vec<u8> = (0..len).map(|_| rng.random_range(0..f.p())).collect();
    FieldVector::from_symbols(f, &s).expect("reduced symbols")
}

fn random_matrix(rng: &mut ChaCha8Rng, f: PrimeField, rows: usize, cols: usize) -> FieldMatrix {
    let rows = (0..rows).map(|_| random_vector(rng, f, cols)).collect();
    FieldMatrix::from_rows(f, cols, rows).expect("consistent shape")
}

/// A random `[n, k]` code with full-rank generator.
fn random_code(rng: &mut ChaCha8Rng, f: PrimeField, n: usize, k: usize) -> LinearCode {
    loop {
        if let Ok(c) = LinearCode::new(random_matrix(rng, f, k, n)) {
            return c;
        }
    }
}

fn random_nonzero(
    rng: &mut ChaCha8Rng,
    f: PrimeField,
    len: usize,
    accept: impl Fn(&FieldVector) -> bool,
) -> Option<FieldVector> {
    (0..10_000)
        .map(|_| random_vector(rng, f, len))
        .find(|v| !v.is_zero() && accept(v))
}

/// A random isotropic pair of length `m`, if one turns up quickly.
fn random_isotropic(rng: &mut ChaCha8Rng, f: PrimeField, m: usize) -> Option<TransformPair> {
    let x = random_nonzero(rng, f, m, |v| v.dot_unchecked(v) == 0)?;
    let y = random_nonzero(rng, f, m, |v| v.dot_unchecked(v) == 0 && v.dot_unchecked(&x) == 0)?;
    TransformPair::new(x, y).ok()
}

fn de_safe_pair(rng: &mut ChaCha8Rng, m: usize) -> Option<TransformPair> {
    let f = PrimeField::BINARY;
    let x = random_nonzero(rng, f, m, |v| v.weight() % 4 == 0)?;
    let y = random_nonzero(rng, f, m, |v| v.weight() % 4 == 0 && v.dot_unchecked(&x) == 0)?;
    TransformPair::new(x, y).ok()
}

fn exact_min_weight(code: &LinearCode) -> std::result::Result<usize, String> {
    match minweight::min_weight(code, None).map_err(err)? {
        MinWeight::Exact(d) => Ok(d),
        MinWeight::Below(_) => Err("unexpected early stop".into()),
    }
}

fn hamming8() -> LinearCode {
    let g = FieldMatrix::parse_rows(PrimeField::BINARY, "10000111\n01001011\n00101101\n00011110").expect("valid rows");
    LinearCode::new(g).expect("full rank")
}

/// `A_12` required of the six circulant seeds.
pub const SEED_A12: u64 = 8196;

fn circulant_seeds() -> Outcome {
    let mut counts = Vec::new();
    for (name, _) in SEED_ROWS {
        let code = bordered_double_circulant(&CirculantSpec::builtin(name).map_err(err)?);
        ensure((code.n(), code.k()) == (56, 28), || {
            format!("{name}: [{}, {}]", code.n(), code.k())
        })?;
        ensure(code.is_self_dual(), || format!("{name}: not self-dual"))?;
        ensure(code.is_doubly_even().map_err(err)?, || {
            format!("{name}: not doubly even")
        })?;
        let dist = minweight::weight_distribution(&code).map_err(err)?;
        let d = dist.min_weight().unwrap_or(0);
        ensure(d == 12, || format!("{name}: minimum weight {d}"))?;
        counts.push((name, dist.count(12)));
    }
    let listed = counts
        .iter()
        .map(|(n, c)| format!("{n} {c}"))
        .collect::<Vec<_>>()
        .join(", ");
    ensure(counts.iter().all(|&(_, c)| c == SEED_A12), || {
        format!("all six [56,28,12] self-dual doubly even, but A_12 = {listed} (expected {SEED_A12})")
    })?;
    Ok(format!("[56,28,12], self-dual, doubly even, A_12 = {listed}"))
}

fn lcd_reproduction() -> Outcome {
    let mut parts = Vec::new();
    for (block, pair_name, d0, d1) in data::LCD_REPRODUCTIONS {
        let sf = data::a_block(block).map_err(err)?;
        let seed = sf.to_code();
        ensure(seed.is_lcd(), || format!("{block}: not LCD"))?;
        let d = exact_min_weight(&seed)?;
        ensure(d == d0, || format!("{block}: minimum weight {d}, expected {d0}"))?;
        let pair = data::pair(pair_name).map_err(err)?;
        let out = transform_code(&sf, &pair, Mode::Unchecked).map_err(err)?.code;
        ensure(out.is_lcd(), || format!("{block} with {pair_name}: not LCD"))?;
        let d2 = exact_min_weight(&out)?;
        ensure(d2 == d1, || {
            format!("{block} with {pair_name}: minimum weight {d2}, expected {d1}")
        })?;
        parts.push(format!(
            "[{},{},{d0}] -> [{},{},{d1}]",
            seed.n(),
            seed.k(),
            out.n(),
            out.k()
        ));
    }
    Ok(parts.join(", "))
}

fn hull_preservation() -> Outcome {
    let mut rng = rng(3);
    let mut by_field = Vec::new();
    let mut oracle_checked = 0;
    for (p, count) in [(2u32, 500), (3, 100), (5, 100)] {
        let f = PrimeField::new(p).map_err(err)?;
        let mut done = 0;
        while done < count {
            let n = rng.random_range(6..=16);
            let k = rng.random_range(1..=n - 4);
            let seed = random_code(&mut rng, f, n, k).standard_form();
            let Some(pair) = random_isotropic(&mut rng, f, n - k) else {
                continue;
            };
            let before = seed.to_code();
            let after = transform_code(&seed, &pair, Mode::Unchecked).map_err(err)?.code;
            ensure(before.gram() == after.gram(), || {
                format!("GF({p}) [{n},{k}] {pair}: G G^T changed")
            })?;
            let (h0, h1) = (before.hull_dim(), after.hull_dim());
            ensure(h0 == h1, || format!("GF({p}) [{n},{k}] {pair}: hull {h0} -> {h1}"))?;
            if (p as u64).pow(k as u32) <= 1 << 10 {
                let (o0, o1) = (
                    oracle::hull_dim(&before).map_err(err)?,
                    oracle::hull_dim(&after).map_err(err)?,
                );
                ensure(o0 == h0 && o1 == h1, || {
                    format!("GF({p}) [{n},{k}]: rank hull {h0}/{h1}, enumerated {o0}/{o1}")
                })?;
                oracle_checked += 1;
            }
            done += 1;
        }
        by_field.push(format!("{count} over GF({p})"));
    }
    Ok(format!(
        "{} ({oracle_checked} also by enumeration)",
        by_field.join(", ")
    ))
}

fn row_formula() -> Outcome {
    let mut rng = rng(4);
    let fields = [2u32, 3, 5];
    for i in 0..1000 {
        let f = PrimeField::new(fields[i % 3]).map_err(err)?;
        let k = rng.random_range(1..=12);
        let m = rng.random_range(1..=16);
        let a = random_matrix(&mut rng, f, k, m);
        let (Some(x), Some(y)) = (
            random_nonzero(&mut rng, f, m, |_| true),
            random_nonzero(&mut rng, f, m, |_| true),
        ) else {
            return Err("could not draw a nonzero vector".into());
        };
        let pair = TransformPair::new(x, y).map_err(err)?;
        let rows = transform_rows(&a, &pair).map_err(err)?;
        let product = a.matmul_symbolwise(&m_matrix(&pair)).map_err(err)?;
        ensure(rows == product, || {
            format!("instance {i} over GF({}): A(x,y) != A M(x,y)", f.p())
        })?;
    }
    Ok("1000 pairs over GF(2), GF(3), GF(5)".into())
}

fn sign_identities() -> Outcome {
    let mut rng = rng(5);
    let mut done = 0;
    for p in [3u32, 5] {
        let f = PrimeField::new(p).map_err(err)?;
        let mut count = 0;
        while count < 50 {
            let seed = StandardForm::from_a(random_matrix(&mut rng, f, 3, 3));
            let Some(pair) = random_isotropic(&mut rng, f, 3) else {
                continue;
            };
            let (x, y) = (pair.x().clone(), pair.y().clone());
            let words = |a: &FieldVector, b: &FieldVector| -> std::result::Result<_, String> {
                let pair = TransformPair::new(a.clone(), b.clone()).map_err(err)?;
                let code = transform_code(&seed, &pair, Mode::Unchecked).map_err(err)?.code;
                oracle::codeword_set(&code).map_err(err)
            };
            let base = words(&x, &y)?;
            ensure(base == words(&x.neg(), &y.neg())?, || {
                format!("GF({p}) {pair}: (x,y) vs (-x,-y)")
            })?;
            let swapped = words(&y, &x)?;
            ensure(swapped == words(&x, &y.neg())?, || {
                format!("GF({p}) {pair}: (y,x) vs (x,-y)")
            })?;
            ensure(swapped == words(&x.neg(), &y)?, || {
                format!("GF({p}) {pair}: (y,x) vs (-x,y)")
            })?;
            count += 1;
        }
        done += count;
    }
    Ok(format!(
        "{done} isotropic pairs on random [6,3] seeds over GF(3), GF(5)"
    ))
}

fn doubly_even_micro() -> Outcome {
    let seed = hamming8().standard_form();
    let vectors: Vec<FieldVector> = (1u64..16)
        .map(|v| FieldVector::from_bits(BitVec::from_words(4, vec![v])))
        .collect();
    let mut checked = 0;
    for x in &vectors {
        for y in &vectors {
            if x.weight() % 4 != 0 || y.weight() % 4 != 0 || x.dot_unchecked(y) != 0 {
                continue;
            }
            let pair = TransformPair::new(x.clone(), y.clone()).map_err(err)?;
            let out = transform_code(&seed, &pair, Mode::Unchecked).map_err(err)?.code;
            ensure(out.is_self_dual(), || format!("{pair}: not self-dual"))?;
            let weights = oracle::weight_counts(&out).map_err(err)?;
            let de = weights.iter().enumerate().all(|(w, &c)| c == 0 || w % 4 == 0);
            ensure(de, || format!("{pair}: weights {weights:?}"))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no admissible pair".into())?;
    Ok(format!(
        "{checked} admissible pair(s) over F_2^4, all outputs doubly even self-dual"
    ))
}

fn weight_identities() -> Outcome {
    let mut rng = rng(7);
    let f = PrimeField::BINARY;
    for i in 0..1000 {
        let len = rng.random_range(1..=200);
        let u = random_vector(&mut rng, f, len);
        let v = random_vector(&mut rng, f, len);
        let lhs = u.add(&v).map_err(err)?.weight();
        let common = u
            .to_symbols()
            .iter()
            .zip(v.to_symbols())
            .filter(|(a, b)| **a == 1 && *b == 1)
            .count();
        ensure(lhs + 2 * common == u.weight() + v.weight(), || {
            format!("instance {i}: direct count disagrees")
        })?;
        ensure(weight_identity_check(&u, &v).map_err(err)?, || {
            format!("instance {i}: identity fails")
        })?;
    }
    let mut done = 0;
    while done < 1000 {
        let k = rng.random_range(1..=10);
        let m = rng.random_range(4..=40);
        let Some(pair) = de_safe_pair(&mut rng, m) else {
            continue;
        };
        let a = random_matrix(&mut rng, f, k, m);
        ensure(mod4_weight_check(&a, &pair).map_err(err)?, || {
            format!("row weights mod 4 changed for {pair}")
        })?;
        done += 1;
    }
    Ok("1000 sum-weight instances, 1000 mod-4 row instances".into())
}

fn nt_correctness() -> Outcome {
    let mut rng = rng(8);
    let f = PrimeField::BINARY;
    let mut small = vec![hamming8(), hamming8().puncture(&[7]).map_err(err)?];
    for _ in 0..40 {
        let n = rng.random_range(5..=12);
        let k = rng.random_range(1..=n - 1);
        small.push(random_code(&mut rng, f, n, k));
    }
    let mut sequences = 0;
    for code in &small {
        let words = code.codewords().map_err(err)?;
        for w in 1..=code.n() {
            let of_weight: Vec<FieldVector> = words.iter().filter(|c| c.weight() == w).cloned().collect();
            let naive = oracle::nt_histogram(code.n(), &of_weight);
            let fast = nt_sequence(code, w).map_err(err)?;
            let expected: Vec<u64> = naive.into_iter().skip(1).collect();
            ensure(fast.counts == expected, || {
                format!(
                    "[{},{}] weight {w}: {:?} vs naive {expected:?}",
                    code.n(),
                    code.k(),
                    fast.counts
                )
            })?;
            sequences += 1;
        }
    }

    let h = hamming8();
    let h_nt = nt_sequence(&h, 4).map_err(err)?;
    for _ in 0..50 {
        let mut perm: Vec<usize> = (0..8).collect();
        perm.shuffle(&mut rng);
        let p = h.permute_columns(&perm).map_err(err)?;
        ensure(nt_sequence(&p, 4).map_err(err)? == h_nt, || {
            format!("Hamming permuted by {perm:?}")
        })?;
    }

    let d11 = bordered_double_circulant(&CirculantSpec::builtin("D11").map_err(err)?);
    let base_words = minweight::codewords_of_weight(&d11, 12).map_err(err)?;
    let base = ColumnIncidence::new(56, &base_words);
    let base_nt = crate::invariant::nt_from_codewords(56, 28, 12, &base_words);
    for round in 0..50 {
        let mut perm: Vec<usize> = (0..56).collect();
        perm.shuffle(&mut rng);
        let p = d11.permute_columns(&perm).map_err(err)?;
        let words = minweight::codewords_of_weight(&p, 12).map_err(err)?;
        ensure(words.len() == base_words.len(), || {
            format!("round {round}: {} weight-12 words", words.len())
        })?;
        let inc = ColumnIncidence::new(56, &words);
        for _ in 0..200 {
            let mut s: Vec<usize> = rand::seq::index::sample(&mut rng, 56, 4).into_vec();
            s.sort_unstable();
            // coordinate i of the permuted code is coordinate perm[i] of D11
            let back: Vec<usize> = s.iter().map(|&i| perm[i]).collect();
            ensure(inc.coverage(&s) == base.coverage(&back), || {
                format!("round {round}: subset {s:?}")
            })?;
        }
        if round < 2 {
            let nt = crate::invariant::nt_from_codewords(56, 28, 12, &words);
            ensure(nt == base_nt, || format!("round {round}: full sequence differs"))?;
        }
    }
    Ok(format!(
        "{sequences} sequences on {} codes with n <= 12; 50 Hamming permutations; 50 D11 permutations x 200 subsets",
        small.len()
    ))
}

fn equivalence_oracle() -> Outcome {
    let mut rng = rng(9);
    let f = PrimeField::BINARY;
    let (mut eq, mut ineq) = (0, 0);
    for i in 0..30 {
        let n = [6, 7, 8][i % 3];
        let k = rng.random_range(2..=n - 2);
        let c1 = random_code(&mut rng, f, n, k);
        let c2 = if i % 2 == 0 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            c1.permute_columns(&perm).map_err(err)?
        } else {
            random_code(&mut rng, f, n, k)
        };
        let brute = oracle::brute_force_equivalence(&c1, &c2).map_err(err)?;
        match (
            is_equivalent(&c1, &c2, EquivalenceOptions::default()).map_err(err)?,
            brute,
        ) {
            (Equivalence::Equivalent(w), Some(_)) => {
                ensure(witness_is_valid(&c1, &c2, &w), || format!("pair {i}: invalid witness"))?;
                eq += 1;
            }
            (Equivalence::Inequivalent, None) => ineq += 1,
            (got, brute) => {
                return Err(format!("pair {i} [{n},{k}]: search {got:?}, brute force {brute:?}"));
            }
        }
    }
    Ok(format!("30 pairs agree ({eq} equivalent, {ineq} inequivalent)"))
}

/// Sampled `x` count and generator seed for the search replay check.
pub const SEARCH_SAMPLES: usize = 200;
pub const SEARCH_RNG_SEED: u64 = 56;

fn search_replay() -> Outcome {
    let store = SeedStore::builtin();
    let run = |count: usize, d_target: usize| -> std::result::Result<_, String> {
        let params = SdSearch {
            seed_id: "D11".into(),
            y: make_yi(28, 4).map_err(err)?,
            source: CandidateSource::Sample {
                count,
                rng_seed: SEARCH_RNG_SEED,
            },
            d_target,
            filter: XFilter::DoublyEvenSafe,
            equivalence: EquivalenceOptions::default(),
        };
        let report = sd_search(&store, &params).map_err(err)?;
        ensure(report.stats.candidates == count, || {
            format!("{} candidates examined", report.stats.candidates)
        })?;
        for r in &report.records {
            ensure(r.self_dual && r.doubly_even == Some(true), || {
                format!("candidate {}: not certified", r.candidate)
            })?;
            let code = replay(r, &store).map_err(|e| format!("candidate {}: {e}", r.candidate))?;
            ensure(code.is_self_dual() && code.is_doubly_even().map_err(err)?, || {
                format!("candidate {}: replayed code not doubly even self-dual", r.candidate)
            })?;
        }
        Ok(report)
    };
    let full = run(SEARCH_SAMPLES, 12)?;
    // the first few samples again with a target every output meets, so
    // that records are emitted, replayed and tampered with
    let low = run(8, 4)?;
    ensure(!low.records.is_empty(), || "no records at d >= 4".into())?;
    let mut forged = low.records[0].clone();
    forged.d += 4;
    ensure(replay(&forged, &store).is_err(), || {
        "a tampered record replayed cleanly".into()
    })?;
    let s = &full.stats;
    Ok(format!(
        "{} candidates: {} records at d = 12, {} below, {} merged; {} records at d >= 4 replayed, tampering detected",
        s.candidates,
        full.records.len(),
        s.below_target,
        s.merged,
        low.records.len()
    ))
}
