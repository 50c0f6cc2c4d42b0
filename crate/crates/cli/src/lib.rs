//! Command-line front end for pushkit.
//!
//! [`run`] takes the argument vector and two sinks, so the binary and the
//! integration tests share one code path.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use pushkit_core::expr::{elaborate, evaluate, parse_expression, SignConvention};
use pushkit_core::polyring::to_tex;
use pushkit_core::{
    localize, pushforward, verify_classical, BundleRing, Check, ClassExpr, Error, Outcome,
    Polynomial, PushforwardOptions, Strategy,
};

/// Exit status for a verification failure or a mathematical error.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for bad arguments or unparsable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pushkit",
    version,
    about = "Gysin pushforward for projective bundles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Push a class on P(V) forward to the base, in Chern classes of V.
    Push {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Skip the oracle cross-check.
        #[arg(long)]
        no_verify: bool,
        /// Localize everything in the roots instead of using the projection formula.
        #[arg(long)]
        direct: bool,
        expr: String,
    },
    /// Print the localized class in the roots u1..ur, before rewriting in Chern classes.
    Localize {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        expr: String,
    },
    /// Print f_*(x^k) for k in a range.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        rank: u64,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the classical identities as a self-check.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(clap::Args, Debug)]
struct Common {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    rank: u64,
    /// Truncation degree of the input; defaults to rank + 3.
    #[arg(long)]
    max_degree: Option<u32>,
}

impl Common {
    fn rank(&self) -> usize {
        self.rank as usize
    }

    fn cutoff(&self) -> u32 {
        self.max_degree.unwrap_or(self.rank as u32 + 3)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Tex,
}

/// One term of a serialized result.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TermRecord {
    /// Reduced fraction `"p/q"`; the denominator is always written.
    pub coeff: String,
    pub exps: BTreeMap<String, u32>,
}

/// JSON shape of a `push` or `localize` result.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub rank: usize,
    pub cutoff: Option<u32>,
    pub valid_through: Option<u32>,
    /// The input after evaluation and truncation, in canonical form.
    pub input: String,
    pub terms: Vec<TermRecord>,
    pub checks: BTreeMap<String, String>,
}

impl OutputRecord {
    fn new(
        rank: usize,
        cutoff: Option<u32>,
        valid_through: Option<u32>,
        input: &Polynomial,
        result: &Polynomial,
        checks: &[Check],
    ) -> Self {
        let table = result.table();
        let terms = result
            .terms_grlex_desc()
            .into_iter()
            .map(|(m, c)| TermRecord {
                coeff: format!("{}/{}", c.numer(), c.denom()),
                exps: m
                    .iter()
                    .map(|(v, e)| (table.name(v).to_string(), e))
                    .collect(),
            })
            .collect();
        OutputRecord {
            rank,
            cutoff,
            valid_through,
            input: input.to_string(),
            terms,
            checks: checks
                .iter()
                .map(|c| (c.name.clone(), c.outcome.to_string()))
                .collect(),
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_USAGE;
        }
    };
    dispatch(&pool, cli.command, out, err)
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(value) = std::env::var_os("PUSHKIT_THREADS") {
        let n = value
            .to_str()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("PUSHKIT_THREADS must be a positive integer, got {value:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn dispatch(
    pool: &rayon::ThreadPool,
    command: Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let source = match &command {
        Command::Push { expr, .. } | Command::Localize { expr, .. } => Some(expr.clone()),
        _ => None,
    };
    let result = match command {
        Command::Push {
            common,
            format,
            no_verify,
            direct,
            expr,
        } => cmd_push(pool, &common, format, !no_verify, direct, &expr, out),
        Command::Localize {
            common,
            format,
            expr,
        } => cmd_localize(pool, &common, format, &expr, out),
        Command::Table {
            rank,
            from,
            to,
            format,
        } => cmd_table(pool, rank as usize, from, to, format, out),
        Command::Verify { common } => cmd_verify(pool, &common, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if let (Error::Parse(p), Some(text)) = (&e, &source) {
                let _ = writeln!(err, "  {text}");
                let column = text.get(..p.offset).map_or(p.offset, |s| s.chars().count());
                let _ = writeln!(err, "  {}^", " ".repeat(column));
            }
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Arity { .. } | Error::UnsupportedVariable(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

enum CliError {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn cmd_push(
    pool: &rayon::ThreadPool,
    common: &Common,
    format: Format,
    verify: bool,
    direct: bool,
    text: &str,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ring = BundleRing::new(common.rank())?;
    let cutoff = common.cutoff();
    let ast = parse_expression(text, ring.rank()).map_err(Error::from)?;
    let class = elaborate(&ast, &ring, Some(cutoff), SignConvention::X)?;
    let options = PushforwardOptions {
        verify,
        strategy: if direct {
            Strategy::Direct
        } else {
            Strategy::ProjectionFormula
        },
    };
    let result = pool.install(|| pushforward(&ring, &class, options))?;
    let record = OutputRecord::new(
        ring.rank(),
        Some(cutoff),
        result.valid_through,
        class.payload(),
        &result.chern_form,
        &result.checks,
    );
    emit(format, &record, &result.chern_form, &result.checks, out)?;
    Ok(if result.passed() { 0 } else { EXIT_FAILURE })
}

fn cmd_localize(
    pool: &rayon::ThreadPool,
    common: &Common,
    format: Format,
    text: &str,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ring = BundleRing::new(common.rank())?;
    let cutoff = common.cutoff();
    let ast = parse_expression(text, ring.rank()).map_err(Error::from)?;
    let phi = evaluate(&ast, &ring, Some(cutoff))?;
    let result = pool.install(|| localize(&ring, &phi, Some(cutoff)))?;
    let record = OutputRecord::new(
        ring.rank(),
        Some(cutoff),
        result.valid_through,
        &phi,
        &result.value,
        &[],
    );
    emit(format, &record, &result.value, &[], out)?;
    Ok(0)
}

fn cmd_table(
    pool: &rayon::ThreadPool,
    rank: usize,
    from: u32,
    to: u32,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ring = BundleRing::new(rank)?;
    let x = ring.var_poly(ring.x());
    let mut records = Vec::new();
    let mut passed = true;
    for k in from..=to {
        let class = ClassExpr::new(&ring, x.pow(k), None)?;
        let result = pool.install(|| pushforward(&ring, &class, PushforwardOptions::default()))?;
        passed &= result.passed();
        match format {
            Format::Json => records.push(OutputRecord::new(
                rank,
                None,
                None,
                class.payload(),
                &result.chern_form,
                &result.checks,
            )),
            Format::Text => writeln!(out, "f_*(x^{k}) = {}", result.chern_form)?,
            Format::Tex => writeln!(out, "f_*(x^{{{k}}}) = {}", to_tex(&result.chern_form))?,
        }
    }
    if format == Format::Json {
        serde_json::to_writer_pretty(&mut *out, &records)?;
        writeln!(out)?;
    }
    Ok(if passed { 0 } else { EXIT_FAILURE })
}

fn cmd_verify(
    pool: &rayon::ThreadPool,
    common: &Common,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let report = pool.install(|| verify_classical(common.rank(), common.cutoff()))?;
    writeln!(out, "rank {} through degree {}", report.rank, report.cutoff)?;
    for check in &report.checks {
        write_check(check, out)?;
    }
    let failed = report.failures().count();
    if failed == 0 {
        writeln!(out, "all {} checks passed", report.checks.len())?;
        Ok(0)
    } else {
        writeln!(out, "{failed} of {} checks failed", report.checks.len())?;
        Ok(EXIT_FAILURE)
    }
}

fn write_check(check: &Check, out: &mut dyn Write) -> std::io::Result<()> {
    match (&check.outcome, &check.detail) {
        (Outcome::Pass, _) | (_, None) => writeln!(out, "  {}: {}", check.name, check.outcome),
        (_, Some(detail)) => writeln!(out, "  {}: {} ({detail})", check.name, check.outcome),
    }
}

fn emit(
    format: Format,
    record: &OutputRecord,
    result: &Polynomial,
    checks: &[Check],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, record)?;
            writeln!(out)?;
        }
        Format::Text | Format::Tex => {
            let rendered = if format == Format::Tex {
                to_tex(result)
            } else {
                result.to_string()
            };
            writeln!(out, "{rendered}")?;
            match record.valid_through {
                Some(d) => writeln!(out, "valid through degree {d}")?,
                None => writeln!(out, "exact")?,
            }
            for check in checks {
                write_check(check, out)?;
            }
        }
    }
    Ok(())
}
