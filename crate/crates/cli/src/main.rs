use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qalg_core::dsl::suite::{Suite, SuiteError};
use qalg_core::dsl::{self, Env};
use qalg_core::observables::Raw;
use qalg_core::verify::{self, Options};
use qalg_core::{oracle, Algebra, EvalError, Expr, Symbolic, DEFAULT_TRUNC};

#[derive(Parser)]
#[command(name = "qalg", version, about = "Conformal quantum algebra: normal forms and identity checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SuiteArgs {
    /// Identity suite file (qalg-identity/1 JSON).
    #[arg(long, conflicts_with = "builtin")]
    suite: Option<PathBuf>,
    /// Use the bundled registry (default).
    #[arg(long)]
    builtin: bool,
    /// Comma-separated tag filter.
    #[arg(long, value_delimiter = ',')]
    tags: Vec<String>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify a suite symbolically and against the oracles.
    Check {
        #[command(flatten)]
        suite: SuiteArgs,
        /// Record step counts and wall time per identity.
        #[arg(long)]
        trace: bool,
        /// Oracle trials per identity (0 skips the oracle).
        #[arg(long, default_value_t = oracle::DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Print the normal form of (A, B).
    Comm { a: String, b: String },
    /// Print the normal form of an expression.
    Simplify {
        expr: String,
        /// Print the rule histogram of the final normalization.
        #[arg(long)]
        trace: bool,
    },
    /// Run only the representation oracles.
    Oracle {
        #[command(flatten)]
        suite: SuiteArgs,
        #[arg(long, default_value_t = oracle::DEFAULT_TRIALS)]
        trials: usize,
    },
}

enum Failure {
    Config(String),
    Check(String),
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Engine(e) => Failure::Check(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

/// Writes to stdout, treating a closed pipe as done.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {}", e);
        }
    }
}

fn truncation() -> Result<Option<u32>, Failure> {
    match std::env::var("QALG_TRUNC") {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map(Some)
            .map_err(|_| Failure::Config(format!("QALG_TRUNC must be a nonnegative integer, got `{}`", v))),
        Err(_) => Ok(None),
    }
}

fn load_suite(args: &SuiteArgs) -> Result<Suite, Failure> {
    let suite = match &args.suite {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {}", path.display(), e)))?;
            Suite::from_json(&text)?
        }
        None => Suite::builtin(),
    };
    Ok(suite.filter_tags(&args.tags))
}

fn expression(src: &str) -> Result<Expr, Failure> {
    let node = dsl::parse(src).map_err(|e| Failure::Config(e.to_string()))?;
    let trunc = truncation()?.unwrap_or(DEFAULT_TRUNC);
    Ok(dsl::evaluate(&Symbolic::global(trunc), &node, &Env::new())?)
}

fn check(args: &SuiteArgs, trace: bool, trials: usize) -> Result<i32, Failure> {
    let suite = load_suite(args)?;
    if suite.identities.is_empty() {
        eprintln!("warning: no identities match the filter");
    }
    let opts = Options { trunc_override: truncation()?, seed: args.seed, trials, trace };
    let report = verify::run_suite(&suite, &opts);
    if args.json {
        emit(&format!("{}\n", report.to_json()));
    } else {
        emit(&report.to_text());
    }
    Ok(report.exit_code())
}

fn oracle_only(args: &SuiteArgs, trials: usize) -> Result<i32, Failure> {
    let suite = load_suite(args)?;
    let table = oracle::so42::table_check(qalg_core::engine()).map_err(|e| Failure::Check(e.to_string()))?;
    let report = oracle::run_suite(&suite, trials, args.seed, truncation()?);
    if args.json {
        emit(&format!("{}\n", report.to_json(&table)));
    } else {
        emit(&format!("so(4,2) table: {}/{} pairs match\n", table.matched, table.pairs));
        emit(&report.to_text());
    }
    let bad = !table.passed() || report.failed() > 0;
    Ok(i32::from(bad))
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Check { suite, trace, trials } => check(&suite, trace, trials),
        Cmd::Comm { a, b } => {
            let (a, b) = (expression(&a)?, expression(&b)?);
            let c = Symbolic::global(a.trunc().min(b.trunc())).commutator(&a, &b)?;
            emit(&format!("{}\n", dsl::render(&c)));
            Ok(0)
        }
        Cmd::Simplify { expr, trace } => {
            let e = expression(&expr)?;
            emit(&format!("{}\n", dsl::render(&e)));
            if trace {
                let node = dsl::parse(&expr).map_err(|e| Failure::Config(e.to_string()))?;
                let trunc = truncation()?.unwrap_or(DEFAULT_TRUNC);
                let raw = dsl::evaluate(&Raw { inner: Symbolic::global(trunc) }, &node, &Env::new())?;
                let (_, report) = qalg_core::engine().normalize_with_report(&raw);
                let mut text = String::new();
                for (rule, n) in &report.histogram {
                    text.push_str(&format!("{:<20} {}\n", rule, n));
                }
                text.push_str(&format!("{:<20} {}\n", "steps", report.steps));
                emit(&text);
            }
            Ok(0)
        }
        Cmd::Oracle { suite, trials } => oracle_only(&suite, trials),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
    }
}
