//! Command-line driver for the localization engine.
//!
//! The binary is a thin wrapper around [`run_args`], which parses arguments,
//! runs one command and returns the exit code together with everything that
//! would be written to stdout and stderr. Tests drive it in-process.

pub mod checks;
pub mod report;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use bott_core::cubics::{GWQuery, PreparedCubics};
use bott_core::localize::{check_weight_length, with_weight_retry, DEFAULT_RETRY_BUDGET, DEFAULT_SEED};
use bott_core::planepoints::{
    check_powersum_r, check_powersum_range, darboux_degree_on, powersum_polynomial_on, segre_bivariate_polynomial_on,
    PreparedPoints,
};
use bott_core::{BigRational, Error, WeightVector};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub use report::{Check, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bott", version, about = "Exact enumerative numbers by torus localization")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Explicit one-parameter subgroup, e.g. `--weights 0,1,19`. Disables the
    /// automatic retry with fresh weights.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for the pseudorandom weight fallback.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Report fixpoint progress on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Twisted cubics on a complete intersection in P^n.
    Cubics {
        #[arg(long)]
        n: usize,
        /// Hypersurface degrees.
        #[arg(long, value_delimiter = ',', default_value = "")]
        degrees: Vec<String>,
        /// Incidence conditions: part c asks the cubic to meet a general
        /// codimension c+1 linear space.
        #[arg(long, value_delimiter = ',', default_value = "")]
        partition: Vec<String>,
    },
    /// Degree (times multiplicity) of the variety of sums of r n-th powers.
    Powersum {
        #[arg(long)]
        r: u32,
        #[arg(long, required_unless_present = "poly", conflicts_with = "poly", allow_hyphen_values = true)]
        n: Option<i64>,
        /// Print the whole polynomial in n instead of a single value.
        #[arg(long)]
        poly: bool,
        /// Evaluate even when n < r - 1.
        #[arg(long)]
        force: bool,
    },
    /// Degree (times multiplicity) of the locus of Darboux curves.
    Darboux {
        #[arg(long)]
        n: u32,
    },
    /// Raw Segre integral of E_n twisted by L^m over the Hilbert scheme of r points.
    Segre {
        #[arg(long)]
        r: u32,
        #[arg(long, required_unless_present = "poly", allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, required_unless_present = "poly", allow_hyphen_values = true)]
        m: Option<i64>,
        /// Print the polynomial in n and m instead of a single value.
        #[arg(long, conflicts_with_all = ["n", "m"])]
        poly: bool,
    },
    /// Run built-in sanity suites.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// `cubics:N` or `points:R`.
        #[arg(long)]
        space: Space,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Euler,
    Weights,
    DegreeVanishing,
    Tangent,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Cubics(usize),
    Points(u32),
}

impl Space {
    pub fn var_count(self) -> usize {
        match self {
            Space::Cubics(n) => n + 1,
            Space::Points(_) => 3,
        }
    }
}

impl FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, size) = s
            .split_once(':')
            .ok_or_else(|| format!("expected cubics:N or points:R, got {s:?}"))?;
        let size: u32 = size.parse().map_err(|_| format!("bad size in {s:?}"))?;
        match kind {
            "cubics" if size >= 3 => Ok(Space::Cubics(size as usize)),
            "cubics" => Err(format!("cubics:{size} needs n >= 3")),
            "points" => Ok(Space::Points(size)),
            _ => Err(format!("unknown space {kind:?}, expected cubics or points")),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Cubics(n) => write!(f, "cubics:{n}"),
            Space::Points(r) => write!(f, "points:{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error("integral is not an integer: {0}")]
    NonIntegral(String),
    #[error("internal error: {0}")]
    Internal(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => EXIT_BAD_INPUT,
            CliError::NonIntegral(_) | CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidQuery(_)
            | Error::OutOfValidityRange { .. }
            | Error::UnsupportedGammaDegree(_)
            | Error::WeightLength { .. }
            | Error::ZeroTangentWeight { .. } => CliError::BadInput(e.to_string()),
            Error::NonIntegralResult { value } => CliError::NonIntegral(value),
            other => CliError::Internal(other),
        }
    }
}

/// Exit code plus captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let stdout = match cli.common.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            let code = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs a parsed command on a pool of the requested size.
pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.common.threads {
        builder = builder.num_threads(k as usize);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::BadInput(format!("cannot start {:?} worker threads: {e}", cli.common.threads)))?;
    let start = Instant::now();
    let mut report = pool.install(|| dispatch(cli))?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Runs `f` with the user's weights, or with the default sequence of weight
/// vectors until one is generic.
pub(crate) fn with_weights<T>(
    common: &CommonArgs,
    var_count: usize,
    f: impl FnMut(&WeightVector) -> bott_core::Result<T>,
) -> Result<(T, WeightVector), CliError> {
    let mut f = f;
    match &common.weights {
        Some(list) => {
            let w = WeightVector::new(list.clone());
            check_weight_length(&w, var_count)?;
            let value = f(&w)?;
            Ok((value, w))
        }
        None => Ok(with_weight_retry(var_count, common.seed, DEFAULT_RETRY_BUDGET, f)?),
    }
}

/// Progress callback printing every `step` fixpoints to stderr.
pub(crate) struct Progress {
    enabled: bool,
    done: AtomicUsize,
}

impl Progress {
    const STEP: usize = 500;

    pub(crate) fn new(enabled: bool) -> Self {
        Progress {
            enabled,
            done: AtomicUsize::new(0),
        }
    }

    pub(crate) fn tick(&self, _index: usize) {
        if !self.enabled {
            return;
        }
        let k = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        if k.is_multiple_of(Self::STEP) {
            eprintln!("fixpoints prepared: {k}");
        }
    }

    pub(crate) fn finish(&self, total: usize) {
        if self.enabled {
            eprintln!("fixpoints prepared: {total} (done)");
        }
        self.done.store(0, Ordering::Relaxed);
    }
}

pub(crate) fn prepare_cubics(common: &CommonArgs, n: usize) -> Result<PreparedCubics, CliError> {
    let progress = Progress::new(common.progress);
    let (prepared, _) = with_weights(common, n + 1, |w| {
        let p = PreparedCubics::with_progress(n, w, &|i| progress.tick(i));
        progress.finish(p.as_ref().map_or(0, PreparedCubics::len));
        p
    })?;
    Ok(prepared)
}

pub(crate) fn prepare_points(common: &CommonArgs, r: u32) -> Result<PreparedPoints, CliError> {
    let progress = Progress::new(common.progress);
    let (prepared, _) = with_weights(common, 3, |w| {
        let p = PreparedPoints::with_progress(r, w, &|i| progress.tick(i));
        progress.finish(p.as_ref().map_or(0, PreparedPoints::len));
        p
    })?;
    Ok(prepared)
}

fn parse_list(name: &str, items: &[String]) -> Result<Vec<u32>, CliError> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::BadInput(format!("--{name}: {s:?} is not a non-negative integer")))
        })
        .collect()
}

fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn dispatch(cli: &Cli) -> Result<RunReport, CliError> {
    let common = &cli.common;
    match &cli.command {
        Command::Cubics { n, degrees, partition } => {
            let degrees = parse_list("degrees", degrees)?;
            let partition = parse_list("partition", partition)?;
            let mut command = format!("cubics --n {n}");
            if !degrees.is_empty() {
                command += &format!(" --degrees {}", join(&degrees));
            }
            if !partition.is_empty() {
                command += &format!(" --partition {}", join(&partition));
            }
            let q = GWQuery::new(*n, degrees, partition)?;
            let prepared = prepare_cubics(common, *n)?;
            let value = prepared.gw_number(&q)?;
            Ok(report(command, Value::String(value.to_string()), prepared.len(), prepared.weights()))
        }
        Command::Powersum { r, n, poly, force } => {
            if *poly {
                check_powersum_r(*r)?;
                let prepared = prepare_points(common, *r)?;
                let p = powersum_polynomial_on(&prepared)?;
                let coeffs = (0..=p.degree().unwrap_or(0))
                    .map(|k| Value::String(rational_string(&p.coeff(k))))
                    .collect();
                Ok(report(format!("powersum --r {r} --poly"), Value::Array(coeffs), prepared.len(), prepared.weights()))
            } else {
                let n = n.expect("clap requires --n without --poly");
                check_powersum_range(*r, n, *force)?;
                let prepared = prepare_points(common, *r)?;
                let value = prepared.segre_integral(n, 0)?.into_integer()?;
                let force = if *force { " --force" } else { "" };
                Ok(report(
                    format!("powersum --r {r} --n {n}{force}"),
                    Value::String(value.to_string()),
                    prepared.len(),
                    prepared.weights(),
                ))
            }
        }
        Command::Darboux { n } => {
            if *n < 1 {
                return Err(CliError::BadInput("Darboux curves need n >= 1".into()));
            }
            let prepared = prepare_points(common, n + 1)?;
            let value = darboux_degree_on(&prepared)?;
            Ok(report(format!("darboux --n {n}"), Value::String(value.to_string()), prepared.len(), prepared.weights()))
        }
        Command::Segre { r, n, m, poly } => {
            let prepared = prepare_points(common, *r)?;
            if *poly {
                let p = segre_bivariate_polynomial_on(&prepared)?;
                let terms = p
                    .terms()
                    .map(|((i, j), c)| Value::String(format!("n^{i}*m^{j}: {}", rational_string(c))))
                    .collect();
                Ok(report(format!("segre --r {r} --poly"), Value::Array(terms), prepared.len(), prepared.weights()))
            } else {
                let (n, m) = (n.expect("clap requires --n"), m.expect("clap requires --m"));
                let value = prepared.segre_integral(n, m)?.into_integer()?;
                Ok(report(
                    format!("segre --r {r} --n {n} --m {m}"),
                    Value::String(value.to_string()),
                    prepared.len(),
                    prepared.weights(),
                ))
            }
        }
        Command::Check { suite, space } => checks::run_suite(common, *suite, *space),
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn report(command: String, result: Value, fixpoints: usize, w: &WeightVector) -> RunReport {
    RunReport {
        command,
        result,
        fixpoints,
        weights: w.as_slice().to_vec(),
        elapsed_ms: 0,
        checks: Vec::new(),
    }
}
