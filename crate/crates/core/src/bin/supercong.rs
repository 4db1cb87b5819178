use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use supercong::congruence::OracleMode;
use supercong::exact::{parse_rational, Rational};
use supercong::harness::config::resolve_statements;
use supercong::harness::{emit_report, identity_suite, parse_config, run_suite, ReportFormat, SuiteConfig};
use supercong::par::{with_threads, Exec};
use supercong::Error;

#[derive(Parser)]
#[command(name = "supercong", version, about = "Exact verification of supercongruences for sums of t_n(x)^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check congruences over a range of odd primes.
    Verify(Box<VerifyArgs>),
    /// Run the exact identity suite.
    Identities {
        #[arg(long, default_value_t = 40)]
        nmax: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML suite file; command-line options override its values.
    #[arg(long)]
    suite: Option<PathBuf>,
    /// Statement id or group (conjecture, lemmas, all); repeatable.
    #[arg(long = "statement")]
    statements: Vec<String>,
    #[arg(long)]
    pmin: Option<u64>,
    #[arg(long)]
    pmax: Option<u64>,
    /// Rational "a/b" or integer; repeatable. Replaces the default four values.
    #[arg(long = "x", allow_hyphen_values = true)]
    xs: Vec<String>,
    /// Also check x = 0..=min(p-1, N).
    #[arg(long)]
    x_integers: Option<u64>,
    /// Also check this many seeded random p-integral rationals.
    #[arg(long)]
    x_random: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    oracle: Option<OracleMode>,
    /// JSON Lines log path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "human")]
    format: ReportFormat,
    #[arg(long)]
    jobs: Option<usize>,
    /// Weight a,b for the `weighted` statement.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weight: Option<Vec<i64>>,
    /// Expected multiple c of p for the `weighted` statement.
    #[arg(long = "expect-p", allow_hyphen_values = true)]
    expect_p: Option<i64>,
    /// Shift every expected residue by k*p.
    #[arg(long, allow_hyphen_values = true)]
    rhs_offset: Option<i64>,
}

fn build_config(args: &VerifyArgs) -> Result<SuiteConfig, Error> {
    let weight = match args.weight.as_deref() {
        Some([a, b]) => Some([*a, *b]),
        Some(_) => return Err(Error::Parse("--weight takes two integers a,b".into())),
        None => None,
    };
    let mut cfg = match &args.suite {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            parse_config(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        None if args.statements.is_empty() => {
            return Err(Error::Parse("either --suite or at least one --statement is required".into()))
        }
        None => SuiteConfig::new(Vec::new()),
    };
    if !args.statements.is_empty() {
        cfg.statements = resolve_statements(&args.statements, weight, args.expect_p)?;
    }
    if let Some(v) = args.pmin {
        cfg.prime_min = v;
    }
    if args.pmax.is_some() {
        cfg.prime_max = args.pmax;
    }
    if !args.xs.is_empty() {
        cfg.x_values = args.xs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>, _>>()?;
    }
    if args.x_integers.is_some() {
        cfg.x_integers = args.x_integers;
    }
    if let Some(n) = args.x_random {
        cfg.x_random = n;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(mode) = args.oracle {
        cfg.oracle_mode = mode;
    }
    if let Some(path) = &args.out {
        cfg.output_path = path.clone();
    }
    if let Some(jobs) = args.jobs {
        cfg.parallelism = jobs;
    }
    if let Some(k) = args.rhs_offset {
        cfg.rhs_offset_p = k;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> ExitCode {
    let cfg = match build_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let summary = match run_suite(&cfg) {
        Ok(summary) => summary,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", emit_report(&summary, args.format));
    for f in &summary.failures {
        let x = f.x.as_ref().map(|x| format!(" x={x}")).unwrap_or_default();
        eprintln!(
            "FAIL {} p={}{x}: lhs={} rhs={} mod {}{}",
            f.statement,
            f.p,
            f.lhs,
            f.rhs,
            f.modulus(),
            f.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        );
    }
    eprintln!(
        "total={} passed={} failed={} skipped={} log={}",
        summary.total,
        summary.passed,
        summary.failed,
        summary.skipped,
        cfg.output_path.display()
    );
    ExitCode::from(summary.exit_code() as u8)
}

fn identities(nmax: u64, jobs: Option<usize>) -> ExitCode {
    let threads = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        eprintln!("error: --jobs must be positive");
        return ExitCode::from(2);
    }
    let outcomes = with_threads(threads, || identity_suite(nmax, Exec::Parallel));
    let mut failed = false;
    for o in &outcomes {
        let status = if o.passed() { "ok" } else { "FAIL" };
        println!("{status:<4} {:<32} cases={:<6} {:.2?}", o.name, o.cases, o.elapsed);
        for f in o.failures.iter().take(5) {
            println!("     {f}");
        }
        failed |= !o.passed();
    }
    ExitCode::from(u8::from(failed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(&args),
        Command::Identities { nmax, jobs } => identities(nmax, jobs),
    }
}
