//! Search drivers over transform pairs, with fingerprint deduplication and
//! replayable records.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::{bordered_double_circulant, CirculantSpec, SEED_ROWS};
use crate::code::{is_extremal_doubly_even_self_dual, LinearCode, StandardForm};
use crate::data;
use crate::equivalence::{is_equivalent, Equivalence, EquivalenceOptions};
use crate::error::{Error, Result};
use crate::field::{FieldVector, PrimeField};
use crate::invariant::{self, Fingerprint, Profile};
use crate::minweight::{self, MinWeight};
use crate::transform::{transform_code, Guarantee, Mode, TransformPair};

/// Name of the sampling generator, recorded with every sampled search.
pub const RNG_NAME: &str = "chacha8";

/// Largest `n - k` for exhaustive x enumeration in [`sd_search`].
pub const MAX_EXHAUSTIVE_X: usize = 32;
/// Largest `n - k` for exhaustive pair enumeration in [`lcd_improve`].
pub const MAX_EXHAUSTIVE_PAIR: usize = 12;

/// `y_i`: `m - i` zeros followed by `i` ones.
pub fn make_yi(m: usize, i: usize) -> Result<FieldVector> {
    if i == 0 || i > m {
        return Err(Error::Precondition(format!(
            "y_i needs 0 < i <= m, got i = {i}, m = {m}"
        )));
    }
    let mut s = vec![0u8; m];
    for v in &mut s[m - i..] {
        *v = 1;
    }
    FieldVector::from_symbols(PrimeField::BINARY, &s)
}

/// Where candidate vectors come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateSource<T> {
    /// Every admissible candidate, in increasing packed order.
    Exhaustive,
    /// `count` distinct admissible candidates drawn with [`RNG_NAME`].
    Sample {
        count: usize,
        rng_seed: u64,
    },
    Explicit(Vec<T>),
}

/// How a record's candidates were produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SourceTag {
    Exhaustive,
    Sample { count: usize, rng: String, rng_seed: u64 },
    Explicit,
}

impl<T> CandidateSource<T> {
    fn tag(&self) -> SourceTag {
        match self {
            CandidateSource::Exhaustive => SourceTag::Exhaustive,
            CandidateSource::Sample { count, rng_seed } => SourceTag::Sample {
                count: *count,
                rng: RNG_NAME.to_string(),
                rng_seed: *rng_seed,
            },
            CandidateSource::Explicit(_) => SourceTag::Explicit,
        }
    }
}

/// Admissibility filter for the x vectors of [`sd_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XFilter {
    /// `wt(x) = 0 mod 4`; the transform runs in checked doubly-even mode.
    DoublyEvenSafe,
    /// Only `wt(x)` even; the transform runs unchecked and outputs that are
    /// not doubly even are discarded.
    EvenWeight,
}

/// One discovered code, sufficient to rebuild it from the seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub seed: String,
    /// Position in the candidate stream.
    pub candidate: usize,
    pub x: String,
    pub y: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub hull_dim: usize,
    pub self_dual: bool,
    pub lcd: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doubly_even: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extremal: Option<bool>,
    pub fingerprint: String,
    pub source: SourceTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl SearchRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })
    }
}

/// Reads JSON-lines records; blank lines are skipped.
pub fn read_records(text: &str) -> Result<Vec<SearchRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            SearchRecord::from_json_line(l).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
                other => other,
            })
        })
        .collect()
}

pub fn write_records(records: &[SearchRecord]) -> String {
    records.iter().map(|r| r.to_json_line() + "\n").collect()
}

/// Counts of what happened to each candidate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates: usize,
    pub below_target: usize,
    /// Unchecked outputs that failed post-hoc certification.
    pub rejected: usize,
    /// Records merged into an equivalent earlier record.
    pub merged: usize,
    pub collisions: usize,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub records: Vec<SearchRecord>,
    pub stats: SearchStats,
}

/// Seeds addressable by name in records.
#[derive(Clone, Debug, Default)]
pub struct SeedStore {
    seeds: BTreeMap<String, StandardForm>,
}

impl SeedStore {
    /// The six circulant seeds and the three bundled `A` blocks.
    pub fn builtin() -> Self {
        let mut store = SeedStore::default();
        for (name, _) in SEED_ROWS {
            let code = bordered_double_circulant(&CirculantSpec::builtin(name).expect("bundled"));
            store.seeds.insert(name.to_string(), code.standard_form());
        }
        for (name, ..) in data::LCD_REPRODUCTIONS {
            store
                .seeds
                .insert(name.to_string(), data::a_block(name).expect("bundled"));
        }
        store
    }

    pub fn insert(&mut self, name: impl Into<String>, code: &LinearCode) {
        self.seeds.insert(name.into(), code.standard_form());
    }

    pub fn get(&self, name: &str) -> Result<&StandardForm> {
        self.seeds
            .get(name)
            .or_else(|| {
                self.seeds
                    .iter()
                    .find(|(k, _)| k.eq_ignore_ascii_case(name))
                    .map(|(_, v)| v)
            })
            .ok_or_else(|| Error::UnknownArtifact(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.seeds.keys().map(String::as_str)
    }
}

/// Parameters for [`sd_search`].
#[derive(Clone, Debug)]
pub struct SdSearch {
    pub seed_id: String,
    pub y: FieldVector,
    pub source: CandidateSource<FieldVector>,
    pub d_target: usize,
    pub filter: XFilter,
    pub equivalence: EquivalenceOptions,
}

fn x_admissible(x: &FieldVector, y: &FieldVector, filter: XFilter) -> bool {
    let modulus = match filter {
        XFilter::DoublyEvenSafe => 4,
        XFilter::EvenWeight => 2,
    };
    !x.is_zero() && x.weight().is_multiple_of(modulus) && x.dot_unchecked(y) == 0
}

fn bits_from_u64(m: usize, v: u64) -> FieldVector {
    FieldVector::from_bits(crate::bits::BitVec::from_words(m, vec![v]))
}

fn random_binary(rng: &mut ChaCha8Rng, m: usize) -> FieldVector {
    let words = (0..m.div_ceil(64)).map(|_| rng.random::<u64>()).collect();
    FieldVector::from_bits(crate::bits::BitVec::from_words(m, words))
}

/// Draws `count` distinct values from `draw`, giving up after a bounded
/// number of attempts.
fn sample_distinct<T: Clone + Eq + std::hash::Hash>(
    count: usize,
    mut draw: impl FnMut() -> Option<T>,
) -> Result<Vec<T>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let max_attempts = count.saturating_mul(1000).max(100_000);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        if let Some(v) = draw() {
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
    }
    if out.len() < count {
        return Err(Error::Capacity {
            what: format!(
                "only {} admissible candidates found for a request of {count}",
                out.len()
            ),
            limit: out.len(),
        });
    }
    Ok(out)
}

fn x_candidates(params: &SdSearch, m: usize) -> Result<Vec<FieldVector>> {
    let y = &params.y;
    match &params.source {
        CandidateSource::Exhaustive => {
            if m > MAX_EXHAUSTIVE_X {
                return Err(Error::Capacity {
                    what: format!("exhaustive x over F_2^{m}"),
                    limit: MAX_EXHAUSTIVE_X,
                });
            }
            Ok((1u64..1u64 << m)
                .map(|v| bits_from_u64(m, v))
                .filter(|x| x_admissible(x, y, params.filter))
                .collect())
        }
        CandidateSource::Sample { count, rng_seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*rng_seed);
            sample_distinct(*count, || {
                let x = random_binary(&mut rng, m);
                x_admissible(&x, y, params.filter).then_some(x)
            })
        }
        CandidateSource::Explicit(xs) => {
            for x in xs {
                if x.len() != m || !x.field().is_binary() {
                    return Err(Error::Dimension(format!("x must be a binary vector of length {m}")));
                }
                if !x_admissible(x, y, params.filter) {
                    return Err(Error::Hypothesis(format!(
                        "x = {x} is not admissible: need x != 0, (x,y) = 0 and wt(x) divisible by {}",
                        if params.filter == XFilter::DoublyEvenSafe { 4 } else { 2 }
                    )));
                }
            }
            Ok(xs.clone())
        }
    }
}

struct Evaluated {
    record: SearchRecord,
    code: LinearCode,
}

enum Verdict {
    Kept(Box<Evaluated>),
    BelowTarget,
    Rejected,
}

/// Transforms a doubly even self-dual seed with `(x, y)` for many `x`,
/// keeping the codes whose minimum weight reaches `d_target`.
pub fn sd_search(store: &SeedStore, params: &SdSearch) -> Result<SearchReport> {
    let sf = store.get(&params.seed_id)?;
    let seed = sf.to_code();
    if !seed.field().is_binary() || !seed.is_self_dual() || !seed.is_doubly_even()? {
        return Err(Error::Precondition(format!(
            "seed {} must be a binary doubly even self-dual code",
            params.seed_id
        )));
    }
    let m = sf.n() - sf.k();
    if params.y.len() != m || !params.y.field().is_binary() {
        return Err(Error::Dimension(format!("y must be a binary vector of length {m}")));
    }
    if !params.y.weight().is_multiple_of(4) || params.y.is_zero() {
        return Err(Error::Hypothesis(format!(
            "wt(y) = {} is not a positive multiple of 4",
            params.y.weight()
        )));
    }
    let xs = x_candidates(params, m)?;
    let tag = params.source.tag();
    let evaluated: Vec<Result<Verdict>> = xs
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let pair = TransformPair::new(x.clone(), params.y.clone())?;
            let mode = match params.filter {
                XFilter::DoublyEvenSafe => Mode::Checked(Guarantee::DoublyEven),
                XFilter::EvenWeight => Mode::Unchecked,
            };
            let out = transform_code(sf, &pair, mode)?.code;
            let Some(d) = screen(&out, params.d_target)? else {
                return Ok(Verdict::BelowTarget);
            };
            let self_dual = out.is_self_dual();
            let doubly_even = out.is_doubly_even()?;
            if !(self_dual && doubly_even) {
                if params.filter == XFilter::DoublyEvenSafe {
                    return Err(Error::TheoremViolation(format!(
                        "x = {x}: output is not doubly even self-dual"
                    )));
                }
                return Ok(Verdict::Rejected);
            }
            let profile = profile_at(&out, d)?;
            let record = SearchRecord {
                seed: params.seed_id.clone(),
                candidate: i,
                x: x.to_string(),
                y: params.y.to_string(),
                n: out.n(),
                k: out.k(),
                d,
                hull_dim: out.hull_dim(),
                self_dual,
                lcd: out.is_lcd(),
                doubly_even: Some(doubly_even),
                extremal: Some(is_extremal_doubly_even_self_dual(&out, d)?),
                fingerprint: profile.fingerprint.digest,
                source: tag.clone(),
                collision: None,
                timestamp: None,
            };
            Ok(Verdict::Kept(Box::new(Evaluated { record, code: out })))
        })
        .collect();
    finish(evaluated, xs.len(), params.equivalence)
}

/// Exact minimum weight if it reaches `d_target`.
fn screen(code: &LinearCode, d_target: usize) -> Result<Option<usize>> {
    Ok(match minweight::min_weight(code, Some(d_target))? {
        MinWeight::Exact(d) if d >= d_target => Some(d),
        _ => None,
    })
}

/// Distribution, `N_t` at weight `d` and fingerprint from a single pass.
fn profile_at(code: &LinearCode, d: usize) -> Result<Profile> {
    let (distribution, words) = minweight::scan(code, Some(d))?;
    let nt = invariant::nt_from_codewords(code.n(), code.k(), d, &words);
    let fingerprint = Fingerprint::from_parts(&distribution, &nt);
    Ok(Profile {
        distribution,
        nt,
        fingerprint,
    })
}

/// Ordered merge with fingerprint deduplication.
fn finish(evaluated: Vec<Result<Verdict>>, candidates: usize, equiv: EquivalenceOptions) -> Result<SearchReport> {
    let mut stats = SearchStats {
        candidates,
        ..SearchStats::default()
    };
    let mut kept: Vec<Evaluated> = Vec::new();
    let mut by_fingerprint: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for v in evaluated {
        let mut e = match v? {
            Verdict::BelowTarget => {
                stats.below_target += 1;
                continue;
            }
            Verdict::Rejected => {
                stats.rejected += 1;
                continue;
            }
            Verdict::Kept(e) => *e,
        };
        let same = by_fingerprint.entry(e.record.fingerprint.clone()).or_default();
        let mut merged = false;
        let mut notes = Vec::new();
        for &j in same.iter() {
            let other = &kept[j];
            match is_equivalent(&other.code, &e.code, equiv)? {
                Equivalence::Equivalent(_) => {
                    merged = true;
                    break;
                }
                Equivalence::Inequivalent => notes.push((j, "inequivalent")),
                Equivalence::Unknown => notes.push((j, "undecided")),
            }
        }
        if merged {
            stats.merged += 1;
            continue;
        }
        if !notes.is_empty() {
            stats.collisions += 1;
            let idx = kept.len();
            let this_candidate = e.record.candidate;
            let mut mine = Vec::new();
            for (j, how) in notes {
                let other = &mut kept[j].record;
                mine.push(format!("candidate {} ({how})", other.candidate));
                let note = format!("candidate {this_candidate} ({how})");
                other.collision = Some(match other.collision.take() {
                    Some(prev) => format!("{prev}; {note}"),
                    None => format!("fingerprint shared with {note}"),
                });
            }
            e.record.collision = Some(format!("fingerprint shared with {}", mine.join("; ")));
            same.push(idx);
        } else {
            same.push(kept.len());
        }
        kept.push(e);
    }
    Ok(SearchReport {
        records: kept.into_iter().map(|e| e.record).collect(),
        stats,
    })
}

/// Parameters for [`lcd_improve`].
#[derive(Clone, Debug)]
pub struct LcdSearch {
    pub seed_id: String,
    pub source: CandidateSource<TransformPair>,
    pub d_target: usize,
    pub equivalence: EquivalenceOptions,
}

fn isotropic_candidates(params: &LcdSearch, m: usize) -> Result<Vec<TransformPair>> {
    let raw = match &params.source {
        CandidateSource::Exhaustive => {
            if m > MAX_EXHAUSTIVE_PAIR {
                return Err(Error::Capacity {
                    what: format!("exhaustive pairs over (F_2^{m})^2"),
                    limit: MAX_EXHAUSTIVE_PAIR,
                });
            }
            let evens: Vec<FieldVector> = (1u64..1u64 << m)
                .filter(|v| v.count_ones() % 2 == 0)
                .map(|v| bits_from_u64(m, v))
                .collect();
            let mut out = Vec::new();
            for x in &evens {
                for y in &evens {
                    if x.dot_unchecked(y) == 0 {
                        out.push(TransformPair::new(x.clone(), y.clone())?);
                    }
                }
            }
            out
        }
        CandidateSource::Sample { count, rng_seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*rng_seed);
            let mut seen = HashSet::new();
            sample_distinct(*count, || {
                let x = random_binary(&mut rng, m);
                let y = random_binary(&mut rng, m);
                let pair = TransformPair::new(x, y).ok().filter(TransformPair::is_isotropic)?;
                seen.insert(pair.orbit_representative()).then_some(pair)
            })?
        }
        CandidateSource::Explicit(pairs) => {
            for p in pairs {
                if p.len() != m || !p.field().is_binary() {
                    return Err(Error::Dimension(format!("pairs must be binary of length {m}")));
                }
                if !p.is_isotropic() {
                    return Err(Error::Hypothesis(format!("pair {p} is not isotropic")));
                }
            }
            pairs.clone()
        }
    };
    // pairs sharing M(x, y) give the same code; keep the first of each orbit
    let mut seen = HashSet::new();
    Ok(raw
        .into_iter()
        .filter(|p| seen.insert(p.orbit_representative()))
        .collect())
}

/// Transforms a binary LCD seed with isotropic pairs, keeping the LCD codes
/// whose minimum weight reaches `d_target`.
pub fn lcd_improve(store: &SeedStore, params: &LcdSearch) -> Result<SearchReport> {
    let sf = store.get(&params.seed_id)?;
    let seed = sf.to_code();
    if !seed.field().is_binary() || !seed.is_lcd() {
        return Err(Error::Precondition(format!(
            "seed {} must be a binary LCD code",
            params.seed_id
        )));
    }
    let m = sf.n() - sf.k();
    let pairs = isotropic_candidates(params, m)?;
    let tag = params.source.tag();
    let evaluated: Vec<Result<Verdict>> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, pair)| {
            let out = transform_code(sf, pair, Mode::Checked(Guarantee::HullDimension))?.code;
            if !out.is_lcd() {
                return Err(Error::TheoremViolation(format!("{pair}: output is not LCD")));
            }
            let Some(d) = screen(&out, params.d_target)? else {
                return Ok(Verdict::BelowTarget);
            };
            let profile = profile_at(&out, d)?;
            let record = SearchRecord {
                seed: params.seed_id.clone(),
                candidate: i,
                x: pair.x().to_string(),
                y: pair.y().to_string(),
                n: out.n(),
                k: out.k(),
                d,
                hull_dim: out.hull_dim(),
                self_dual: out.is_self_dual(),
                lcd: true,
                doubly_even: None,
                extremal: None,
                fingerprint: profile.fingerprint.digest,
                source: tag.clone(),
                collision: None,
                timestamp: None,
            };
            Ok(Verdict::Kept(Box::new(Evaluated { record, code: out })))
        })
        .collect();
    finish(evaluated, pairs.len(), params.equivalence)
}

/// Rebuilds a record's code from its seed and checks every stored field.
pub fn replay(record: &SearchRecord, store: &SeedStore) -> Result<LinearCode> {
    let sf = store.get(&record.seed)?;
    let field = sf.field();
    let x = FieldVector::parse(field, &record.x)?;
    let y = FieldVector::parse(field, &record.y)?;
    let pair = TransformPair::new(x, y)?;
    let code = transform_code(sf, &pair, Mode::Unchecked)?.code;
    let mismatch = |what: &str, stored: String, actual: String| {
        Err(Error::Integrity(format!(
            "{what}: record has {stored}, replay gives {actual}"
        )))
    };
    if (code.n(), code.k()) != (record.n, record.k) {
        return mismatch(
            "parameters",
            format!("[{}, {}]", record.n, record.k),
            format!("[{}, {}]", code.n(), code.k()),
        );
    }
    let d = match minweight::min_weight(&code, None)? {
        MinWeight::Exact(d) => d,
        MinWeight::Below(_) => unreachable!("no threshold"),
    };
    if d != record.d {
        return mismatch("minimum weight", record.d.to_string(), d.to_string());
    }
    if code.hull_dim() != record.hull_dim {
        return mismatch(
            "hull dimension",
            record.hull_dim.to_string(),
            code.hull_dim().to_string(),
        );
    }
    if code.is_self_dual() != record.self_dual || code.is_lcd() != record.lcd {
        return mismatch(
            "self-dual/LCD flags",
            format!("{}/{}", record.self_dual, record.lcd),
            format!("{}/{}", code.is_self_dual(), code.is_lcd()),
        );
    }
    if let Some(de) = record.doubly_even {
        if code.is_doubly_even()? != de {
            return mismatch("doubly even flag", de.to_string(), (!de).to_string());
        }
    }
    let fp = profile_at(&code, d)?.fingerprint.digest;
    if fp != record.fingerprint {
        return mismatch("fingerprint", record.fingerprint.clone(), fp);
    }
    Ok(code)
}
