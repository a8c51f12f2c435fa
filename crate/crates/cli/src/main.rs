use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod repro;

#[derive(Parser, Debug)]
#[command(name = "hilbsym", version, about = "Equations and Hilbert functions of the symmetric open subscheme of Hilb^{d+1}(C^d)")]
struct Cli {
    /// Output format. `table` is plain text; `markdown` only differs for `repro`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for random primes, points and matrices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 lets the pool decide).
    #[arg(long, global = true, env = "HILBSYM_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Markdown,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Modular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of a Schur module.
    Dims {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        d: usize,
        /// Also count semistandard tableaux.
        #[arg(long)]
        ssyt: bool,
    },
    /// Littlewood-Richardson product of two Schur modules.
    Lr {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        d: usize,
    },
    /// Decomposition of a symmetric power of a Schur module.
    Plethysm {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        d: usize,
    },
    /// All commutator generators C(a;j,(i,k)).
    Equations {
        #[arg(long)]
        d: usize,
    },
    /// Eliminate the constant coefficients and pass to q-coordinates.
    Eliminate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare every admissible pivot choice (d = 3 only).
        #[arg(long)]
        check_pivots: bool,
    },
    /// Hilbert function of a quadric system.
    Hilbert(HilbertArgs),
    /// Plethysm lower bound on the Hilbert function.
    Bound {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// The non-radical family and its dimension count.
    Reducibility {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: Option<usize>,
        /// Random members to build and check.
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Hilbert function of the Plücker cone of G(2,6) next to the d = 3 system.
    Pluecker {
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Run every check and report pass/fail per criterion.
    Repro {
        /// Add the d = 5 checks.
        #[arg(long)]
        extended: bool,
        /// Include wall-clock seconds per criterion.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// QuadricSystem JSON file.
    #[arg(long)]
    system: Option<PathBuf>,
    /// Use the final system for this d.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args, Debug)]
struct HilbertArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 3)]
    rmax: usize,
    #[command(flatten)]
    rank: RankArgs,
}

#[derive(Args, Debug, Clone)]
pub struct RankArgs {
    #[arg(long, value_enum, default_value_t = Mode::Modular)]
    pub mode: Mode,
    /// `auto` or a comma-separated list of primes.
    #[arg(long, default_value = "auto")]
    pub prime: String,
    /// Ignore the column budget.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = hilbsym::hilbert::COLUMN_BUDGET)]
    pub budget: u128,
}

/// A problem with the arguments rather than with the mathematics.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// At least one checked statement was false.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if err.downcast_ref::<CheckFailed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<hilbsym::Error>() {
        Some(
            hilbsym::Error::Invalid(_)
            | hilbsym::Error::TooManyParts { .. }
            | hilbsym::Error::Budget { .. }
            | hilbsym::Error::BadPrime { .. }
            | hilbsym::Error::Json(_)
            | hilbsym::Error::Io(_),
        ) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<String> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| usage(format!("cannot size thread pool: {e}")))?;
    }
    let ctx = commands::Ctx {
        format: cli.format,
        seed: cli.seed,
    };
    match cli.command {
        Command::Dims { lambda, d, ssyt } => commands::dims(&ctx, &lambda, d, ssyt),
        Command::Lr { lambda, mu, d } => commands::lr(&ctx, &lambda, &mu, d),
        Command::Plethysm { r, lambda, d } => commands::plethysm(&ctx, r, &lambda, d),
        Command::Equations { d } => commands::equations(&ctx, d),
        Command::Eliminate { d, out, check_pivots } => commands::eliminate(&ctx, d, out.as_deref(), check_pivots),
        Command::Hilbert(args) => commands::hilbert(&ctx, args.source.system.as_deref(), args.source.d, args.rmax, &args.rank),
        Command::Bound { d, r, k } => commands::bound(&ctx, d, r, k),
        Command::Reducibility { d, c, trials } => commands::reducibility(&ctx, d, c, trials),
        Command::Pluecker { rmax, rank } => commands::pluecker(&ctx, rmax, &rank),
        Command::Repro { extended, timings } => repro::run(&ctx, extended, timings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            // a failed report is still printed in full
            if let Some(CheckFailed(report)) = err.downcast_ref::<CheckFailed>() {
                print!("{report}");
                eprintln!("error: one or more checks failed");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
