//! Command-line front end: one subcommand per library operation.
//!
//! [`run`] parses arguments, executes the command and returns a
//! [`CommandResult`]; the binary only prints it and picks the exit code.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use inflatable::counting::{count_length3_all, count_occurrences, density};
use inflatable::criteria::{
    admissible_residues, check_3_inflatable, compose_inflatables, is_admissible_length, InflatabilityReport,
};
use inflatable::limits::{limit_density_inflation, limit_density_uniform, DensityProfile};
use inflatable::montecarlo::{estimate_limit_density, RNG_ALGORITHM};
use inflatable::partitions::block_partitions;
use inflatable::perm::{generalized_inflate, inflate, Permutation, Style};
use inflatable::plot::{plot, PlotFormat};
use inflatable::rational::{format_rational, parse_rational, Rational};
use inflatable::search::{search_3_inflatable_with, SearchConfig};
use inflatable::Error;

/// Environment variable overriding the default worker count.
pub const THREADS_ENV: &str = "INFLATABLE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    Inadmissible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::Inadmissible => "inadmissible",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    /// What goes to standard output.
    pub output: String,
    pub diagnostics: Vec<String>,
    pub exit_code: i32,
}

/// Exit codes for failures; success and inadmissible results exit 0.
pub mod exit {
    pub const USAGE: i32 = 2;
    pub const BAD_PERMUTATION: i32 = 3;
    pub const PRECONDITION: i32 = 4;
    pub const IO: i32 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "inflatable", version, about = "Pattern densities in permutation inflations")]
struct Cli {
    /// Print the JSON payload instead of the human-readable form.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of standard output (search: the hit list).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact density t(pattern, tau).
    Density {
        tau: String,
        #[arg(long)]
        pattern: String,
    },
    /// All length-2 and length-3 pattern counts.
    Counts { tau: String },
    /// inflate(tau, gamma), or a generalized inflation with one --block per entry of tau.
    Inflate {
        tau: String,
        gamma: Option<String>,
        #[arg(long = "block")]
        blocks: Vec<String>,
    },
    /// Block-partitions of a permutation (length at most 10).
    Blocks { pi: String },
    /// Limit density of a pattern (length at most 6) in the inflation of tau.
    Limit {
        tau: String,
        #[arg(long)]
        pattern: String,
        /// JSON object mapping patterns to "p/q"; uniform when omitted.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// 3-inflatability report.
    Check {
        tau: Option<String>,
        /// File with one permutation per line.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Admissible residues, or admissible lengths up to --max.
    Lengths {
        #[arg(long)]
        max: Option<u64>,
        #[arg(long = "mod", default_value_t = 144)]
        modulus: u64,
    },
    /// Exhaustive search for 3-inflatable permutations of length n.
    Search {
        #[arg(long)]
        n: usize,
        /// Only centrally symmetric candidates.
        #[arg(long)]
        central: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        limit: Option<usize>,
        /// Stream every hit to standard error as it is found.
        #[arg(long)]
        emit_all: bool,
        #[arg(long, value_name = "SECONDS")]
        timeout: Option<u64>,
    },
    /// inflate(tau1, tau2) for two 3-inflatable permutations, in comma form.
    Compose { tau1: String, tau2: String },
    /// Monte Carlo estimate of a limit density in the uniform inflation of tau.
    Montecarlo {
        tau: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        subset_samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// 180 degree rotation.
    Rotate { pi: String },
    /// Permutation plot.
    Plot {
        tau: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Svg,
    Ascii,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Empty
            | Error::Duplicate(_)
            | Error::OutOfRange { .. }
            | Error::InvalidChar(_)
            | Error::InvalidToken(_)
            | Error::MixedStyle(_) => exit::BAD_PERMUTATION,
            _ => exit::PRECONDITION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure { code: exit::IO, message: format!("{}: {e}", path.display()) }
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    text.parse::<Permutation>()
        .map_err(|e| Failure { code: exit::BAD_PERMUTATION, message: format!("malformed permutation {text:?}: {e}") })
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Body of a successful command before output selection.
struct Outcome {
    status: Status,
    payload: Value,
    /// Human-readable form; `None` means the JSON payload is the output.
    text: Option<String>,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn json(payload: Value) -> Self {
        Outcome { status: Status::Ok, payload, text: None, diagnostics: Vec::new() }
    }

    fn text(payload: Value, text: String) -> Self {
        Outcome { status: Status::Ok, payload, text: Some(text), diagnostics: Vec::new() }
    }
}

/// Runs the CLI on `argv`, which excludes the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString>,
{
    let args = std::iter::once(std::ffi::OsString::from("inflatable")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let ok = !e.use_stderr();
            return CommandResult {
                status: if ok { Status::Ok } else { Status::Error },
                payload: if ok { Value::Null } else { json!({ "status": "error", "error": e.kind().to_string() }) },
                output: if ok { e.to_string() } else { String::new() },
                diagnostics: if ok { Vec::new() } else { vec![e.to_string()] },
                exit_code: if ok { 0 } else { exit::USAGE },
            };
        }
    };
    let out_for_payload = match cli.command {
        Command::Search { .. } => None,
        _ => cli.out.clone(),
    };
    match execute(&cli) {
        Ok(outcome) => {
            let mut output = match (&outcome.text, cli.json) {
                (Some(text), false) => text.clone(),
                _ => serde_json::to_string(&outcome.payload).expect("serializable"),
            };
            if !output.ends_with('\n') {
                output.push('\n');
            }
            let mut diagnostics = outcome.diagnostics;
            if let Some(path) = out_for_payload {
                if let Err(e) = fs::write(&path, &output) {
                    let f = io_failure(&path, e);
                    return failure(f);
                }
                diagnostics.push(format!("wrote {}", path.display()));
                output = String::new();
            }
            CommandResult { status: outcome.status, payload: outcome.payload, output, diagnostics, exit_code: 0 }
        }
        Err(f) => failure(f),
    }
}

fn failure(f: Failure) -> CommandResult {
    CommandResult {
        status: Status::Error,
        payload: json!({ "status": "error", "error": f.message }),
        output: String::new(),
        diagnostics: vec![f.message],
        exit_code: f.code,
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Density { tau, pattern } => {
            let (tau, pattern) = (parse_perm(tau)?, parse_perm(pattern)?);
            let d = density(&pattern, &tau)?;
            let count = count_occurrences(&pattern, &tau);
            let text = format!("t({pattern}, {tau}) = {} ({count} occurrences)", format_rational(&d));
            Ok(Outcome::text(json!({ "density": format_rational(&d) }), text))
        }
        Command::Counts { tau } => {
            let tau = parse_perm(tau)?;
            let counts = count_length3_all(&tau)?;
            let mut map = Map::new();
            let mut text = String::new();
            for (pattern, count) in counts.entries() {
                text.push_str(&format!("{pattern}\t{count}\n"));
                map.insert(pattern.to_string(), json!(count));
            }
            Ok(Outcome::text(json!({ "tau": tau.to_string(), "counts": map }), text))
        }
        Command::Inflate { tau, gamma, blocks } => {
            let tau = parse_perm(tau)?;
            let result = match (gamma, blocks.is_empty()) {
                (Some(g), true) => inflate(&tau, &parse_perm(g)?),
                (None, false) => {
                    let blocks = blocks.iter().map(|b| parse_perm(b)).collect::<Result<Vec<_>, _>>()?;
                    generalized_inflate(&tau, &blocks)?
                }
                _ => {
                    return Err(Failure {
                        code: exit::USAGE,
                        message: "give either GAMMA or one --block per entry of TAU".into(),
                    })
                }
            };
            let text = result.to_string();
            Ok(Outcome::text(json!({ "result": text, "length": result.len() }), text))
        }
        Command::Blocks { pi } => {
            let pi = parse_perm(pi)?;
            let parts = block_partitions(&pi)?;
            let text: String = parts.iter().map(|b| b.describe() + "\n").collect();
            let list: Vec<Value> = parts
                .iter()
                .map(|b| {
                    json!({
                        "outer": b.outer.to_string(),
                        "inner": b.inner.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "sizes": b.sizes,
                    })
                })
                .collect();
            Ok(Outcome::text(json!({ "pi": pi.to_string(), "partitions": list }), text))
        }
        Command::Limit { tau, pattern, profile } => {
            let (tau_p, pattern_p) = (parse_perm(tau)?, parse_perm(pattern)?);
            let value = match profile {
                None => limit_density_uniform(&pattern_p, &tau_p)?,
                Some(path) => {
                    let profile = read_profile(path)?;
                    limit_density_inflation(&pattern_p, &tau_p, &profile)?
                }
            };
            Ok(Outcome::json(json!({
                "pattern": pattern_p.to_string(),
                "tau": tau_p.to_string(),
                "limit_density": format_rational(&value),
            })))
        }
        Command::Check { tau, file } => match (tau, file) {
            (Some(t), None) => {
                let tau = parse_perm(t)?;
                Ok(Outcome::json(report_json(&tau, &check_3_inflatable(&tau))))
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
                let mut reports = Vec::new();
                let mut all = true;
                for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
                    let tau = parse_perm(line)?;
                    let report = check_3_inflatable(&tau);
                    all &= report.verdict;
                    reports.push(report_json(&tau, &report));
                }
                Ok(Outcome::json(json!({ "reports": reports, "all_verdicts": all })))
            }
            _ => Err(Failure { code: exit::USAGE, message: "give either TAU or --file".into() }),
        },
        Command::Lengths { max, modulus } => {
            let residues = admissible_residues(*modulus)?;
            let mut payload = json!({ "residues": residues });
            if let Some(max) = max {
                let lengths: Vec<u64> = (1..=*max).filter(|&n| is_admissible_length(n)).collect();
                payload["lengths"] = json!(lengths);
            }
            Ok(Outcome::json(payload))
        }
        Command::Search { n, central, threads, limit, emit_all, timeout } => {
            let config = SearchConfig {
                n: *n,
                central_only: *central,
                limit: *limit,
                threads: threads.unwrap_or_else(default_threads),
                emit_all: *emit_all,
                timeout: timeout.map(Duration::from_secs),
            };
            let start = Instant::now();
            let stderr = Mutex::new(std::io::stderr());
            let outcome = search_3_inflatable_with(&config, &|subtree, hit| {
                let mut err = stderr.lock().unwrap();
                let _ = writeln!(err, "hit subtree={subtree} {hit}");
            })?;
            let elapsed = start.elapsed().as_millis() as u64;
            let mut diagnostics = Vec::new();
            if let Some(path) = &cli.out {
                let mut body = String::new();
                for hit in &outcome.hits {
                    body.push_str(&hit.to_string());
                    body.push('\n');
                }
                fs::write(path, body).map_err(|e| io_failure(path, e))?;
                diagnostics.push(format!("wrote {} hits to {}", outcome.hits.len(), path.display()));
            }
            let mut payload = json!({
                "n": outcome.n,
                "space": outcome.space.name(),
                "scanned": outcome.scanned as u64,
                "found": outcome.found,
                "elapsed_ms": elapsed,
            });
            if outcome.timed_out {
                payload["timed_out"] = json!(true);
            }
            let status = if outcome.inadmissible {
                payload["status"] = json!("inadmissible");
                diagnostics.push(format!("length {n} is inadmissible: target counts are not integers"));
                Status::Inadmissible
            } else {
                Status::Ok
            };
            Ok(Outcome { status, payload, text: None, diagnostics })
        }
        Command::Compose { tau1, tau2 } => {
            let (a, b) = (parse_perm(tau1)?, parse_perm(tau2)?);
            let result = compose_inflatables(&a, &b)?;
            let text = result.format(Style::Comma)?;
            Ok(Outcome::text(json!({ "result": text, "length": result.len() }), text))
        }
        Command::Montecarlo { tau, pattern, j, samples, subset_samples, seed, threads } => {
            let (tau_p, pattern_p) = (parse_perm(tau)?, parse_perm(pattern)?);
            let exact = limit_density_uniform(&pattern_p, &tau_p)?;
            let pool = rayon_pool(threads.unwrap_or_else(default_threads))?;
            let est =
                pool.install(|| estimate_limit_density(&tau_p, &pattern_p, *j, *samples, *subset_samples, *seed))?;
            let exact_f = exact_to_f64(&exact);
            Ok(Outcome::json(json!({
                "tau": tau_p.to_string(),
                "pattern": pattern_p.to_string(),
                "mean": est.mean,
                "stderr": est.stderr,
                "exact": format_rational(&exact),
                "z": finite_or_null(est.z_score(exact_f)),
                "j": est.j,
                "samples": est.samples,
                "subset_samples": est.subset_samples,
                "seed": est.seed,
                "rng": RNG_ALGORITHM,
            })))
        }
        Command::Rotate { pi } => {
            let pi = parse_perm(pi)?;
            let r = pi.rotate();
            let text = r.to_string();
            Ok(Outcome::text(json!({ "result": text, "centrally_symmetric": r == pi }), text))
        }
        Command::Plot { tau, format } => {
            let tau = parse_perm(tau)?;
            let fmt = match format {
                Format::Svg => PlotFormat::Svg,
                Format::Ascii => PlotFormat::Ascii,
            };
            let body = plot(&tau, fmt)?;
            Ok(Outcome::text(json!({ "tau": tau.to_string(), "plot": body }), body))
        }
    }
}

fn rayon_pool(threads: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure { code: exit::PRECONDITION, message: e.to_string() })
}

fn exact_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn report_json(tau: &Permutation, report: &InflatabilityReport) -> Value {
    let rationals = |m: &BTreeMap<Permutation, Rational>| -> Map<String, Value> {
        m.iter().map(|(p, r)| (p.to_string(), rat(r))).collect()
    };
    let counts: Map<String, Value> = report.observed_counts.iter().map(|(p, c)| (p.to_string(), json!(c))).collect();
    json!({
        "tau": tau.to_string(),
        "length": report.length,
        "admissible_length": report.admissible_length,
        "required": rationals(&report.required),
        "observed": rationals(&report.observed),
        "observed_counts": counts,
        "verdict": report.verdict,
    })
}

fn read_profile(path: &std::path::Path) -> Result<DensityProfile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let raw: BTreeMap<String, String> = serde_json::from_str(&text).map_err(|e| Failure {
        code: exit::PRECONDITION,
        message: format!("{}: profile must map pattern strings to \"p/q\" strings: {e}", path.display()),
    })?;
    let mut entries = BTreeMap::new();
    for (k, v) in raw {
        entries.insert(parse_perm(&k)?, parse_rational(&v)?);
    }
    Ok(DensityProfile::new(entries)?)
}
