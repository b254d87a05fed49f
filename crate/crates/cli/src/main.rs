use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twisted_moments::figures::{self, Window};
use twisted_moments::verify::{self, VerifyOptions};
use twisted_moments::Complex64;

mod eval;

/// Twisted second moments of Dirichlet L-functions: figure data,
/// verification suites and single evaluations.
#[derive(Debug, Parser)]
#[command(name = "twisted-moments", version)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the data of figure 1 (moments) or 2 (residuals) as CSV.
    Figure(FigureArgs),
    /// Run a verification suite and report the worst residual per check.
    Verify(VerifyArgs),
    /// Evaluate one quantity and print it as CSV.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Which figure, 1 or 2.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    figure: Option<u8>,

    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), conflicts_with = "figure")]
    which: Option<u8>,

    /// Largest prime modulus.
    #[arg(long, default_value_t = 229)]
    qmax: u64,

    /// Truncation orders for figure 2, comma separated.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [0usize, 1, 2, 3])]
    n: Vec<usize>,

    /// Only keep fractions near this rational, e.g. 1/2 (figure 2).
    #[arg(long, requires = "window")]
    near: Option<String>,

    /// Half-width of the window around --near.
    #[arg(long, requires = "near")]
    window: Option<f64>,

    /// Output file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(conflicts_with = "suite_flag")]
    suite: Option<String>,

    #[arg(long = "suite")]
    suite_flag: Option<String>,

    /// Use the reduced grids.
    #[arg(long)]
    quick: bool,

    /// Override the tolerance of every residual check.
    #[arg(long)]
    tol: Option<f64>,

    /// Seed of the random test grids.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// One of M, Mstar, D, eta, psi, f, dedekind, c0, cf.
    object: String,

    /// Parameters of the object; complex numbers as `0.5+2i`.
    #[arg(allow_hyphen_values = true)]
    params: Vec<String>,
}

/// A failure with the exit code it maps to.
enum Failure {
    Io(io::Error),
    Invalid(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<twisted_moments::Error> for Failure {
    fn from(e: twisted_moments::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Figure(args) => figure(args),
        Command::Verify(args) => run_verify(args),
        Command::Eval(args) => eval::run(&args.object, &args.params).map(|line| println!("{line}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_window(near: &str, width: f64) -> Result<Window, Failure> {
    let (num, den) = near.split_once('/').ok_or_else(|| Failure::Invalid(format!("--near expects p/r, got '{near}'")))?;
    let parse = |s: &str| s.trim().parse::<u64>().map_err(|e| Failure::Invalid(format!("--near {near}: {e}")));
    Ok(Window::new(parse(num)?, parse(den)?, width)?)
}

fn figure(args: FigureArgs) -> Result<(), Failure> {
    let which = args.figure.or(args.which).ok_or_else(|| Failure::Invalid("choose figure 1 or 2".into()))?;
    let window = match (&args.near, args.window) {
        (Some(near), Some(width)) => Some(parse_window(near, width)?),
        _ => None,
    };
    if which == 1 {
        if window.is_some() {
            return Err(Failure::Invalid("--near applies to figure 2 only".into()));
        }
        let rows = figures::moment_rows(args.qmax)?;
        figures::write_moment_csv(&rows, output(args.out.as_ref())?)?;
    } else {
        let rows = figures::residual_rows(args.qmax, &args.n, window)?;
        figures::write_residual_csv(&rows, output(args.out.as_ref())?)?;
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<(), Failure> {
    let name = args.suite.or(args.suite_flag).unwrap_or_else(|| "all".into());
    let mut opts = VerifyOptions { quick: args.quick, tolerance: args.tol, ..VerifyOptions::default() };
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    let suites = verify::Suite::parse_list(&name)?;
    let mut failed = Vec::new();
    let mut out = io::stdout().lock();
    for suite in suites {
        let report = verify::run_suite(suite, &opts);
        writeln!(out, "[{}] {:.1}s", report.suite, report.elapsed.as_secs_f64())?;
        for check in &report.checks {
            writeln!(out, "  {check}")?;
            if !check.passed() {
                failed.push(format!("{}: {}", report.suite, check.name));
            }
        }
        out.flush()?;
    }
    if failed.is_empty() {
        writeln!(out, "all checks passed")?;
        Ok(())
    } else {
        Err(Failure::Invalid(format!("{} check(s) failed: {}", failed.len(), failed.join(", "))))
    }
}

fn complex_csv(z: Complex64) -> String {
    format!("{},{}", figures::format_value(z.re), figures::format_value(z.im))
}
