//! Command-line front end for `prime-lines`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 on a domain error or a failed check, 2 on a
//! usage error and 3 when a search stopped on its node budget.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prime_lines::bounds::{self, WPolicy};
use prime_lines::cover::{self, DEFAULT_NODE_BUDGET};
use prime_lines::geometry::{self, prime_points, PrimePoint, DEFAULT_PAIR_BUDGET};
use prime_lines::oeis::{self, Quantity};
use prime_lines::primes::{
    self, cache, envelope, nth_prime_upper_bound, EmpiricalTable, PrimeTable, RemainderModel,
};
use prime_lines::{Error, Model};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

/// Environment variable naming the sieve cache directory.
pub const CACHE_ENV: &str = "PRIME_LINES_CACHE";

#[derive(Debug, Parser)]
#[command(name = "prime-lines", version, about = "Lines through the prime number graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file (atomically) instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_PAIR_BUDGET)]
    pub pair_budget: u128,
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Analytic,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    L,
    Awkward,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The first n primes as `index,value`.
    Primes {
        #[arg(long, alias = "n")]
        count: usize,
    },
    /// B(1..=n) with a witness line for each prefix.
    Bn {
        #[arg(long)]
        n: usize,
    },
    /// An optimal line cover of the first n prime points (JSON), or L(1..=n) (CSV).
    Ln {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        distinct_slopes: bool,
    },
    /// As `ln` with pairwise distinct slopes.
    Lnp {
        #[arg(long)]
        n: usize,
    },
    /// Awkward primes among the first n primes.
    Awkward {
        #[arg(long)]
        n: usize,
    },
    /// Farey parallelogram cover of the inverse points over (e^k, e^{k+1}].
    FareyCover {
        #[arg(long)]
        k: u32,
        /// rh, uncond:<c>, empirical or empirical:<path>
        #[arg(long, default_value = "empirical")]
        model: String,
        #[arg(long, value_enum, default_value_t = Policy::Empirical)]
        w_policy: Policy,
        #[arg(long)]
        q_override: Option<u64>,
    },
    /// Fullest slope-1/k line over (e^k, e^{k+1/Q}].
    BWitness {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "empirical")]
        model: String,
        #[arg(long)]
        q_override: Option<u64>,
    },
    /// Theoretical bound curves at log-spaced n in [3, n].
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value = "rh")]
        model: String,
    },
    /// The share of the first x prime points on a line with at least (n/R(n))^{1/4} points.
    Erdos {
        #[arg(long, alias = "n")]
        x: u64,
        /// Universe size M; defaults to x.
        #[arg(long)]
        universe: Option<u64>,
        #[arg(long, default_value = "rh")]
        model: String,
    },
    /// Sampled |π(x) − li(x)| against a remainder model.
    Envelope {
        #[arg(long, alias = "n")]
        x_max: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value = "rh")]
        model: String,
    },
    /// Compare a b-file against computed values.
    CheckOeis {
        /// Local path or http(s) URL.
        #[arg(long)]
        bfile: String,
        #[arg(long, value_enum, default_value_t = QuantityArg::L)]
        quantity: QuantityArg,
        /// Largest prime index to compute; defaults to the last index in the file.
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Outcome of a subcommand before it is written out.
struct Output {
    body: String,
    code: i32,
    note: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            code: EXIT_OK,
            note: None,
        }
    }
}

/// Parse `argv` (including the program name) and run.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    let result = pool.install(|| execute(&cli));
    match result {
        Ok(out) => {
            if let Err(e) = emit(&out.body, cli.out.as_deref()) {
                eprintln!("error: {e}");
                return EXIT_DOMAIN;
            }
            if let Some(note) = out.note {
                eprintln!("{note}");
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn emit(body: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()
        }
        Some(path) => write_atomic(path, body.as_bytes()),
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn execute(cli: &Cli) -> prime_lines::Result<Output> {
    let fmt = cli.format;
    match &cli.command {
        Command::Primes { count } => {
            let rows: Vec<IndexValue> = first_primes(*count)?
                .into_iter()
                .enumerate()
                .map(|(i, p)| IndexValue {
                    index: i as u64 + 1,
                    value: p,
                })
                .collect();
            Ok(Output::ok(render_rows(fmt, &rows, &rows)?))
        }
        Command::Bn { n } => {
            let seq = geometry::b_sequence_with(&points(*n)?, cli.pair_budget)?;
            let rows: Vec<BRow> = seq
                .iter()
                .map(|e| BRow {
                    n: e.n,
                    count: e.count,
                    a: e.line.map(|l| l.a),
                    b: e.line.map(|l| l.b),
                    c: e.line.map(|l| l.c),
                })
                .collect();
            Ok(Output::ok(render_rows(fmt, &seq, &rows)?))
        }
        Command::Ln { n, distinct_slopes } => line_cover(*n, *distinct_slopes, cli),
        Command::Lnp { n } => line_cover(*n, true, cli),
        Command::Awkward { n } => {
            let pts = points(*n)?;
            let seq = cover::l_sequence_for(&pts, false, cli.node_budget)?;
            if let Some(bad) = seq.iter().find(|e| !e.optimal) {
                let rows: Vec<LRow> = seq.iter().map(LRow::from).collect();
                return Ok(Output {
                    body: render_rows(fmt, &rows, &rows)?,
                    code: EXIT_TRUNCATED,
                    note: Some(format!(
                        "TRUNCATED: L({}) not certified within the node budget; awkward primes need exact L",
                        bad.n
                    )),
                });
            }
            let report = cover::awkward_from_sequence(&pts, &seq)?;
            Ok(Output::ok(render_rows(fmt, &report, &report.primes)?))
        }
        Command::FareyCover {
            k,
            model,
            w_policy,
            q_override,
        } => {
            let limit = (*k as f64 + 1.0).exp().ceil() as u64 + 1;
            let model = parse_model(model, limit)?;
            let policy = match w_policy {
                Policy::Analytic => WPolicy::Analytic,
                Policy::Empirical => WPolicy::Empirical,
            };
            let table = prime_table(limit)?;
            let report = bounds::farey_cover_with(*k, &model, policy, *q_override, &table)?;
            Ok(Output::ok(render_rows(fmt, &report, &report.lines)?))
        }
        Command::BWitness { k, model, q_override } => {
            let limit = (*k as f64 + 1.0).exp().ceil() as u64 + 1;
            let model = parse_model(model, limit)?;
            let table = prime_table(limit)?;
            let r = bounds::b_witness_with(*k, &model, *q_override, &table)?;
            let row = WitnessRow {
                k: r.k,
                q: r.q,
                a: r.line.a,
                b: r.line.b,
                c: r.line.c,
                count: r.count,
                points: r.points,
                groups: r.groups,
                mean_per_line: r.mean_per_line,
            };
            Ok(Output::ok(render_rows(fmt, &r, &[row])?))
        }
        Command::Bounds { n, points, model } => {
            let model = parse_model(model, (*n).max(3))?;
            let ns = log_grid(*n, *points)?;
            let curve = bounds::bound_curves(&model, &ns)?;
            Ok(Output::ok(render_rows(fmt, &curve, &curve)?))
        }
        Command::Erdos { x, universe, model } => {
            let m = universe.unwrap_or(*x);
            let model = parse_model(model, m.max(3))?;
            let r = bounds::erdos_fraction_with(*x, m, &model, cli.pair_budget)?;
            Ok(Output::ok(render_rows(fmt, &r, &r.thresholds)?))
        }
        Command::Envelope {
            x_max,
            samples,
            model,
        } => {
            let model = parse_model(model, *x_max)?;
            let table = prime_table((*x_max).max(2))?;
            let r = envelope::envelope_with_table(&model, &table, *x_max, *samples)?;
            let row = EnvelopeRow {
                x_max: r.x_max,
                samples: r.samples,
                skipped: r.skipped,
                max_deviation: r.max_deviation,
                argmax_x: r.argmax_x,
                violations: r.violations.len(),
            };
            let code = if r.ok() { EXIT_OK } else { EXIT_DOMAIN };
            let note = (!r.ok()).then(|| format!("{} samples exceed the model", r.violations.len()));
            Ok(Output {
                body: render_rows(fmt, &r, &[row])?,
                code,
                note,
            })
        }
        Command::CheckOeis { bfile, quantity, n } => {
            let text = read_bfile(bfile)?;
            let entries = oeis::parse_bfile(&text)?;
            let quantity = match quantity {
                QuantityArg::L => Quantity::L,
                QuantityArg::Awkward => Quantity::Awkward,
            };
            let n_max = n.unwrap_or_else(|| entries.last().map_or(0, |e| e.index as usize));
            let r = oeis::check_oeis(&entries, quantity, n_max, cli.node_budget)?;
            let rows: Vec<oeis::Mismatch> = r.mismatches.clone();
            let mut notes: Vec<String> = r.mismatches.iter().map(|m| format!("MISMATCH {m}")).collect();
            if !r.refused.is_empty() {
                notes.push(format!("TRUNCATED: {} indices not certified, first {}", r.refused.len(), r.refused[0]));
            }
            let code = if !r.ok() {
                EXIT_DOMAIN
            } else if !r.refused.is_empty() {
                EXIT_TRUNCATED
            } else {
                EXIT_OK
            };
            Ok(Output {
                body: render_rows(fmt, &r, &rows)?,
                code,
                note: (!notes.is_empty()).then(|| notes.join("\n")),
            })
        }
    }
}

fn line_cover(n: usize, distinct: bool, cli: &Cli) -> prime_lines::Result<Output> {
    let pts = points(n)?;
    match cli.format {
        Format::Json => {
            let sol = cover::exact_cover(&pts, distinct, cli.node_budget)?;
            let truncated = sol.truncated;
            let body = to_json(&sol)?;
            Ok(Output {
                body,
                code: if truncated { EXIT_TRUNCATED } else { EXIT_OK },
                note: truncated.then(|| format!("TRUNCATED: cover of size {} is an upper bound", sol.size)),
            })
        }
        Format::Csv => {
            let seq = cover::l_sequence_for(&pts, distinct, cli.node_budget)?;
            let rows: Vec<LRow> = seq.iter().map(LRow::from).collect();
            let first_bad = seq.iter().find(|e| !e.optimal).map(|e| e.n);
            Ok(Output {
                body: render_rows(Format::Csv, &rows, &rows)?,
                code: if first_bad.is_some() { EXIT_TRUNCATED } else { EXIT_OK },
                note: first_bad.map(|b| format!("TRUNCATED: sizes from n = {b} on are upper bounds")),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct IndexValue {
    pub index: u64,
    pub value: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct BRow {
    pub n: usize,
    pub count: usize,
    #[serde(rename = "A")]
    pub a: Option<i64>,
    #[serde(rename = "B")]
    pub b: Option<i64>,
    #[serde(rename = "C")]
    pub c: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct LRow {
    pub n: usize,
    pub size: usize,
    pub optimal: bool,
}

impl From<&cover::LEntry> for LRow {
    fn from(e: &cover::LEntry) -> Self {
        LRow {
            n: e.n,
            size: e.size,
            optimal: e.optimal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct WitnessRow {
    pub k: u32,
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
    pub count: usize,
    pub points: usize,
    pub groups: usize,
    pub mean_per_line: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct EnvelopeRow {
    pub x_max: u64,
    pub samples: usize,
    pub skipped: usize,
    pub max_deviation: f64,
    pub argmax_x: f64,
    pub violations: usize,
}

/// JSON renders `full`; CSV renders `rows`, one record each, with a header.
fn render_rows<J: Serialize, R: Serialize>(fmt: Format, full: &J, rows: &[R]) -> prime_lines::Result<String> {
    match fmt {
        Format::Json => to_json(full),
        Format::Csv => to_csv(rows),
    }
}

fn to_json<J: Serialize + ?Sized>(v: &J) -> prime_lines::Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<R: Serialize>(rows: &[R]) -> prime_lines::Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Domain(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Domain(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn prime_table(limit: u64) -> prime_lines::Result<PrimeTable> {
    let list = cache::primes_upto_cached(limit, cache_dir().as_deref())?;
    Ok(PrimeTable::from_sorted(list, limit))
}

fn first_primes(n: usize) -> prime_lines::Result<Vec<u64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut limit = nth_prime_upper_bound(n as u64);
    loop {
        let mut list = cache::primes_upto_cached(limit, cache_dir().as_deref())?;
        if list.len() >= n {
            list.truncate(n);
            return Ok(list);
        }
        limit = limit.saturating_mul(2);
    }
}

fn points(n: usize) -> prime_lines::Result<Vec<PrimePoint>> {
    if cache_dir().is_none() {
        return prime_points(n);
    }
    Ok(geometry::points_from_primes(&first_primes(n)?, 0, geometry::Orientation::Direct))
}

/// Up to `count` distinct integers log-spaced over `[3, n]`.
fn log_grid(n: u64, count: usize) -> prime_lines::Result<Vec<u64>> {
    if n < 3 {
        return Err(Error::Domain(format!("bounds need n >= 3, got {n}")));
    }
    let count = count.max(2);
    let (lo, hi) = (3f64.ln(), (n as f64).ln());
    let mut ns: Vec<u64> = (0..count)
        .map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp().round() as u64)
        .map(|v| v.clamp(3, n))
        .collect();
    ns.dedup();
    Ok(ns)
}

/// `rh`, `uncond:<c>`, `empirical` (observed maxima of |π − li| at `e^j`
/// covering `x_need`) or `empirical:<path>` (rows `x bound`).
pub fn parse_model(spec: &str, x_need: u64) -> prime_lines::Result<Model> {
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    match (kind, arg) {
        ("rh", None) => Ok(RemainderModel::RiemannHypothesis),
        ("uncond", None) => RemainderModel::unconditional(primes::DEFAULT_UNCONDITIONAL_C),
        ("uncond", Some(c)) => {
            let c: f64 = c
                .parse()
                .map_err(|_| Error::Domain(format!("bad constant in model {spec:?}")))?;
            RemainderModel::unconditional(c)
        }
        ("empirical", None) => {
            let j = (x_need.max(3) as f64).ln().ceil() as u32;
            primes::empirical_model(j.max(1))
        }
        ("empirical", Some(path)) => {
            let text = fs::read_to_string(path)?;
            Ok(RemainderModel::Empirical(EmpiricalTable::new(parse_rows(&text)?)?))
        }
        _ => Err(Error::Domain(format!(
            "unknown model {spec:?}; use rh, uncond:<c>, empirical or empirical:<path>"
        ))),
    }
}

/// `x bound` or `x,bound` rows; `#` comments and blank lines skipped.
fn parse_rows(text: &str) -> prime_lines::Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[x, r]) => rows.push((x, r)),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `x bound`, got {raw:?}"),
                })
            }
        }
    }
    Ok(rows)
}

/// Read a b-file from a path or an http(s) URL. When the download fails the
/// file named by the URL's last path segment in the working directory is
/// used instead, with a warning.
pub fn read_bfile(src: &str) -> prime_lines::Result<String> {
    if !(src.starts_with("http://") || src.starts_with("https://")) {
        return Ok(fs::read_to_string(src)?);
    }
    match fetch(src) {
        Ok(text) => Ok(text),
        Err(e) => {
            let local = src.rsplit('/').next().unwrap_or("");
            eprintln!("warning: fetching {src} failed ({e}); trying local file {local:?}");
            if local.is_empty() {
                return Err(Error::Domain(format!("cannot fetch {src}: {e}")));
            }
            Ok(fs::read_to_string(local)?)
        }
    }
}

fn fetch(url: &str) -> Result<String, ureq::Error> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs(30)))
        .build()
        .into();
    agent.get(url).call()?.body_mut().read_to_string()
}
