use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hullcode::circulant::{pure_double_circulant, SEED_ROWS};
use hullcode::data;
use hullcode::equivalence::{is_equivalent, Equivalence, EquivalenceOptions};
use hullcode::invariant;
use hullcode::search::{
    lcd_improve, make_yi, read_records, replay, sd_search, write_records, CandidateSource, LcdSearch, SdSearch,
    SearchReport, SeedStore, XFilter,
};
use hullcode::transform::{transform_code, Guarantee, Mode};
use hullcode::verify;
use hullcode::{
    bordered_double_circulant, min_weight, weight_distribution, CirculantSpec, FieldVector, LinearCode, MinWeight,
    PrimeField, StandardForm, TransformPair,
};

/// `print!` that exits quietly when stdout is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

macro_rules! outln {
    () => {
        out!("\n")
    };
    ($($arg:tt)*) => {
        out!("{}\n", format_args!($($arg)*))
    };
}

#[derive(Parser)]
#[command(
    name = "hullcode",
    version,
    about = "Linear codes, hull-preserving transforms and code searches"
)]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters, predicates and hull dimension of a code
    Info {
        /// Code file (default: stdin)
        code: Option<PathBuf>,
        /// Skip the minimum weight computation
        #[arg(long)]
        no_min_weight: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Bordered (or pure) double circulant code from a bundled seed or a first row
    BuildCirculant {
        /// Seed name (D11, C56.1 .. C56.5) or a first row of symbols
        seed: String,
        #[arg(long)]
        pure: bool,
        /// Field size for a literal first row
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Apply a transform pair to a seed in standard form
    Transform {
        /// Bundled seed name or code file
        #[arg(long)]
        seed: String,
        /// Bundled pair name or pair file
        #[arg(long)]
        pair: String,
        /// Require and verify a theorem's hypothesis
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
    },
    /// Minimum weight
    Minweight {
        code: Option<PathBuf>,
        /// Stop at the first codeword lighter than this
        #[arg(long)]
        abort_below: Option<usize>,
    },
    /// Weight distribution
    Distribution {
        code: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// N_t sequence of the weight-w codewords (default: minimum weight), as JSON
    Invariant {
        code: Option<PathBuf>,
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Permutation equivalence of two binary codes
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = EquivalenceOptions::default().node_budget)]
        budget: u64,
    },
    /// Shorten on 1-based coordinates
    Shorten {
        code: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        coords: Vec<usize>,
    },
    /// Puncture on 1-based coordinates
    Puncture {
        code: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', required = true)]
        coords: Vec<usize>,
    },
    /// Search doubly even self-dual codes from a seed and y
    SearchSd {
        #[arg(long)]
        seed: String,
        /// y_i (last i coordinates one) when a number, otherwise a vector
        #[arg(long)]
        y: String,
        #[command(flatten)]
        source: SourceArgs,
        /// File of x vectors, one per line
        #[arg(long, conflicts_with_all = ["exhaustive", "sample"])]
        x_file: Option<PathBuf>,
        #[arg(long)]
        d_target: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::DoublyEvenSafe)]
        filter: FilterArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search LCD codes from a binary LCD seed
    SearchLcd {
        #[arg(long)]
        seed: String,
        #[command(flatten)]
        source: SourceArgs,
        /// File of pairs, `x=... y=...` per line
        #[arg(long, conflicts_with_all = ["exhaustive", "sample"])]
        pair_file: Option<PathBuf>,
        #[arg(long)]
        d_target: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rebuild every record of a search output and check it
    Replay { records: PathBuf },
    /// Run the reproduction checks
    VerifyPaper {
        /// Write a JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Run only these checks
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Hull,
    DoublyEven,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    DoublyEvenSafe,
    EvenWeight,
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long)]
    exhaustive: bool,
    /// Number of candidates to sample
    #[arg(long, requires = "rng_seed")]
    sample: Option<usize>,
    #[arg(long)]
    rng_seed: Option<u64>,
}

#[derive(Args)]
struct OutputArgs {
    /// JSON-lines output (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stamp records with the current time
    #[arg(long)]
    timestamp: bool,
    #[arg(long, default_value_t = EquivalenceOptions::default().node_budget)]
    budget: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(args: std::fmt::Arguments) {
    let mut stdout = io::stdout().lock();
    if let Err(e) = stdout.write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing stdout: {e}");
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_code(path: Option<&Path>) -> Result<LinearCode> {
    let text = read_input(path)?;
    let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
    LinearCode::parse_text(&text).with_context(|| format!("parsing {name}"))
}

fn exact(code: &LinearCode) -> Result<usize> {
    match min_weight(code, None)? {
        MinWeight::Exact(d) => Ok(d),
        MinWeight::Below(_) => bail!("walk stopped without a threshold"),
    }
}

/// A bundled seed (circulant or A block) or a code file, as a standard form.
fn load_seed(name: &str) -> Result<StandardForm> {
    if let Ok(sf) = SeedStore::builtin().get(name) {
        return Ok(sf.clone());
    }
    Ok(read_code(Some(Path::new(name)))?.standard_form())
}

fn load_pair(name: &str, field: PrimeField) -> Result<TransformPair> {
    if let Ok(p) = data::pair(name) {
        return Ok(p);
    }
    let text = fs::read_to_string(name).with_context(|| format!("no bundled pair or file named {name}"))?;
    Ok(TransformPair::parse(field, &text)?)
}

/// The builtin seeds plus `name` loaded from a file if it is not builtin.
fn store_with(name: &str) -> Result<SeedStore> {
    let mut store = SeedStore::builtin();
    if store.get(name).is_err() {
        store.insert(name, &read_code(Some(Path::new(name)))?);
    }
    Ok(store)
}

fn to_zero_based(coords: &[usize]) -> Result<Vec<usize>> {
    coords
        .iter()
        .map(|&c| c.checked_sub(1).context("coordinates are 1-based"))
        .collect()
}

fn candidate_source<T>(args: &SourceArgs, explicit: Option<Vec<T>>) -> Result<CandidateSource<T>> {
    Ok(match (explicit, args.exhaustive, args.sample) {
        (Some(v), false, None) => CandidateSource::Explicit(v),
        (None, true, None) => CandidateSource::Exhaustive,
        (None, false, Some(count)) => CandidateSource::Sample {
            count,
            rng_seed: args.rng_seed.context("--sample needs --rng-seed")?,
        },
        _ => bail!("give exactly one of --exhaustive, --sample N --rng-seed S, or an explicit candidate file"),
    })
}

fn emit_report(mut report: SearchReport, output: &OutputArgs) -> Result<ExitCode> {
    if output.timestamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        for r in &mut report.records {
            r.timestamp = Some(format!("unix:{now}"));
        }
    }
    let text = write_records(&report.records);
    match &output.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => out!("{text}"),
    }
    eprintln!("{}", serde_json::to_string(&report.stats)?);
    Ok(ExitCode::SUCCESS)
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Info {
            code,
            no_min_weight,
            format,
        } => {
            let c = read_code(code.as_deref())?;
            let d = if no_min_weight { None } else { Some(exact(&c)?) };
            let binary = c.field().is_binary();
            let even = binary.then(|| c.is_even()).transpose()?;
            let doubly_even = binary.then(|| c.is_doubly_even()).transpose()?;
            match format {
                Format::Json => outln!(
                    "{}",
                    json!({
                        "q": c.field().p(), "n": c.n(), "k": c.k(), "d": d,
                        "hull_dim": c.hull_dim(), "lcd": c.is_lcd(),
                        "self_orthogonal": c.is_self_orthogonal(), "self_dual": c.is_self_dual(),
                        "even": even, "doubly_even": doubly_even,
                    })
                ),
                Format::Text => {
                    let params = match d {
                        Some(d) => format!("[{},{},{d}]", c.n(), c.k()),
                        None => format!("[{},{}]", c.n(), c.k()),
                    };
                    outln!("code {params} over GF({})", c.field().p());
                    outln!("hull dimension {}", c.hull_dim());
                    let mut flags = vec![];
                    if c.is_lcd() {
                        flags.push("LCD");
                    }
                    if c.is_self_orthogonal() {
                        flags.push("self-orthogonal");
                    }
                    if c.is_self_dual() {
                        flags.push("self-dual");
                    }
                    if doubly_even == Some(true) {
                        flags.push("doubly even");
                    } else if even == Some(true) {
                        flags.push("even");
                    }
                    if !flags.is_empty() {
                        outln!("{}", flags.join(", "));
                    }
                }
            }
        }
        Command::BuildCirculant { seed, pure, q } => {
            let spec = if SEED_ROWS.iter().any(|(n, _)| n.eq_ignore_ascii_case(&seed)) {
                CirculantSpec::builtin(&seed)?
            } else {
                CirculantSpec::parse(PrimeField::new(q)?, &seed)?
            };
            let code = if pure {
                pure_double_circulant(&spec)
            } else {
                bordered_double_circulant(&spec)
            };
            out!("{}", code.to_text());
        }
        Command::Transform { seed, pair, check } => {
            let sf = load_seed(&seed)?;
            let pair = load_pair(&pair, sf.field())?;
            let mode = match check {
                None => Mode::Unchecked,
                Some(CheckArg::Hull) => Mode::Checked(Guarantee::HullDimension),
                Some(CheckArg::DoublyEven) => Mode::Checked(Guarantee::DoublyEven),
            };
            let out = transform_code(&sf, &pair, mode)?;
            if !sf.is_identity_permutation() {
                let perm: Vec<String> = out.column_permutation.iter().map(|c| (c + 1).to_string()).collect();
                outln!("# coordinate order of the seed: {}", perm.join(","));
            }
            out!("{}", out.code.to_text());
        }
        Command::Minweight { code, abort_below } => {
            let c = read_code(code.as_deref())?;
            match min_weight(&c, abort_below)? {
                MinWeight::Exact(d) => outln!("{d}"),
                MinWeight::Below(t) => outln!("below {t}"),
            }
        }
        Command::Distribution { code, format } => {
            let dist = weight_distribution(&read_code(code.as_deref())?)?;
            match format {
                Format::Json => outln!("{}", serde_json::to_string(&dist)?),
                Format::Text => {
                    for (w, c) in dist.nonzero() {
                        outln!("{w} {c}");
                    }
                }
            }
        }
        Command::Invariant { code, weight } => {
            let c = read_code(code.as_deref())?;
            let w = match weight {
                Some(w) => w,
                None => exact(&c)?,
            };
            outln!("{}", serde_json::to_string(&invariant::nt_sequence(&c, w)?)?);
        }
        Command::Equiv { first, second, budget } => {
            let (a, b) = (read_code(Some(&first))?, read_code(Some(&second))?);
            match is_equivalent(&a, &b, EquivalenceOptions { node_budget: budget })? {
                Equivalence::Equivalent(w) => {
                    let w: Vec<String> = w.iter().map(|c| (c + 1).to_string()).collect();
                    outln!("equivalent");
                    outln!("{}", w.join(","));
                }
                Equivalence::Inequivalent => outln!("inequivalent"),
                Equivalence::Unknown => outln!("unknown (node budget exhausted)"),
            }
        }
        Command::Shorten { code, coords } => {
            let c = read_code(code.as_deref())?;
            out!("{}", c.shorten(&to_zero_based(&coords)?)?.to_text());
        }
        Command::Puncture { code, coords } => {
            let c = read_code(code.as_deref())?;
            out!("{}", c.puncture(&to_zero_based(&coords)?)?.to_text());
        }
        Command::SearchSd {
            seed,
            y,
            source,
            x_file,
            d_target,
            filter,
            output,
        } => {
            let store = store_with(&seed)?;
            let sf = store.get(&seed)?;
            let m = sf.n() - sf.k();
            let y = match y.parse::<usize>() {
                Ok(i) => make_yi(m, i)?,
                Err(_) => FieldVector::parse(PrimeField::BINARY, &y)?,
            };
            let explicit = match x_file {
                Some(p) => Some(
                    read_input(Some(&p))?
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| FieldVector::parse(PrimeField::BINARY, l))
                        .collect::<hullcode::Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let params = SdSearch {
                seed_id: seed,
                y,
                source: candidate_source(&source, explicit)?,
                d_target,
                filter: match filter {
                    FilterArg::DoublyEvenSafe => XFilter::DoublyEvenSafe,
                    FilterArg::EvenWeight => XFilter::EvenWeight,
                },
                equivalence: EquivalenceOptions {
                    node_budget: output.budget,
                },
            };
            return emit_report(sd_search(&store, &params)?, &output);
        }
        Command::SearchLcd {
            seed,
            source,
            pair_file,
            d_target,
            output,
        } => {
            let store = store_with(&seed)?;
            let explicit = match pair_file {
                Some(p) => Some(
                    read_input(Some(&p))?
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| {
                            TransformPair::parse(
                                PrimeField::BINARY,
                                &l.split_whitespace().collect::<Vec<_>>().join("\n"),
                            )
                        })
                        .collect::<hullcode::Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let params = LcdSearch {
                seed_id: seed,
                source: candidate_source(&source, explicit)?,
                d_target,
                equivalence: EquivalenceOptions {
                    node_budget: output.budget,
                },
            };
            return emit_report(lcd_improve(&store, &params)?, &output);
        }
        Command::Replay { records } => {
            let records = read_records(&read_input(Some(&records))?)?;
            let mut store = SeedStore::builtin();
            for r in &records {
                if store.get(&r.seed).is_err() {
                    store.insert(&r.seed, &read_code(Some(Path::new(&r.seed)))?);
                }
            }
            let mut failed = 0;
            for r in &records {
                match replay(r, &store) {
                    Ok(_) => outln!("ok candidate {} [{},{},{}]", r.candidate, r.n, r.k, r.d),
                    Err(e) => {
                        outln!("FAILED candidate {}: {e}", r.candidate);
                        failed += 1;
                    }
                }
            }
            if failed > 0 {
                bail!("{failed} of {} records failed to replay", records.len());
            }
        }
        Command::VerifyPaper { report, only } => {
            let mut results = Vec::new();
            for check in verify::checks() {
                if !only.is_empty() && !only.contains(&check.id) {
                    continue;
                }
                let r = check.run();
                outln!("{}", r.line());
                results.push(r);
            }
            if let Some(p) = report {
                let body = serde_json::to_string_pretty(&results)?;
                fs::write(&p, body + "\n").with_context(|| format!("writing {}", p.display()))?;
            }
            if results.iter().any(|r| !r.passed) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
