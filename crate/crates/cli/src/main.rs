use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::CliError;

/// Horn inequalities, Kirwan cone membership and Littlewood–Richardson checks.
#[derive(Parser, Debug)]
#[command(name = "horn", version, about, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Directory for cached tables (default: $HORN_CACHE_DIR, else the user cache directory).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Neither read nor write cached tables.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List Intersecting / ⁰ / ⁰⁰ tuples of a table.
    Tuples(TuplesArgs),
    /// Emit the inequality system of K(r,s) or its σ-stable slice.
    System(SystemArgs),
    /// Decide membership of a spectrum family read from JSON.
    Member(MemberArgs),
    /// Print the table of inequality counts for r = 1..rmax.
    Tables(TablesArgs),
    /// Exact LP redundancy analysis of a generated system.
    Redundancy(RedundancyArgs),
    /// Search numerically for Hermitian matrices realizing a spectrum family.
    Witness(WitnessArgs),
    /// Compare the Horn recursion with Littlewood–Richardson positivity.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Number of spectra.
    #[arg(long, default_value_t = 3)]
    pub s: usize,
    /// Cycle type of σ, e.g. `3` or `1,2` (padded with fixed points).
    #[arg(long, value_name = "CYCLE-TYPE")]
    pub sigma: Option<String>,
}

#[derive(Args, Debug)]
pub struct TuplesArgs {
    /// Size of the subsets; all sizes below the ambient when omitted.
    #[arg(long)]
    pub d: Option<u32>,
    /// Ambient `[r]` of the subsets, or their size when `--n` is given.
    #[arg(long)]
    pub r: u32,
    /// Ambient `[n]`; switches to the Intersecting(r, n, s) reading.
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub ty: TypeArgs,
    /// `intersecting`, `0` or `00`.
    #[arg(long, default_value = "0")]
    pub level: String,
    /// Group tuples into orbits under permutations of the s factors.
    #[arg(long)]
    pub orbits: bool,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    #[arg(long)]
    pub r: u32,
    #[command(flatten)]
    pub ty: TypeArgs,
    /// `full0`, `min00` or `intersecting`.
    #[arg(long, default_value = "full0")]
    pub level: String,
}

#[derive(Args, Debug)]
pub struct MemberArgs {
    /// SpectrumFamily JSON file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Cycle type of σ; the input must then be σ-stable.
    #[arg(long, value_name = "CYCLE-TYPE")]
    pub sigma: Option<String>,
    #[arg(long, default_value = "full0")]
    pub level: String,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    #[arg(long, default_value_t = 6)]
    pub rmax: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RedundancyMode {
    /// Sequential removal in canonical order.
    Greedy,
    /// Each constraint against all the others.
    Each,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Dual,
    Primal,
}

#[derive(Args, Debug)]
pub struct RedundancyArgs {
    #[arg(long)]
    pub r: u32,
    #[command(flatten)]
    pub ty: TypeArgs,
    #[arg(long, default_value = "full0")]
    pub level: String,
    #[arg(long, value_enum, default_value_t = RedundancyMode::Greedy)]
    pub mode: RedundancyMode,
    #[arg(long, value_enum, default_value_t = RouteArg::Dual)]
    pub route: RouteArg,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    /// SpectrumFamily JSON file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    /// Write per-iteration residuals of the returned run as CSV.
    #[arg(long, value_name = "FILE")]
    pub history: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CrosscheckArgs {
    /// Check only tables of this subset size.
    #[arg(long)]
    pub r: Option<u32>,
    /// Largest ambient; every table with ambient ≤ n is checked unless `--r` is given.
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub ty: TypeArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                CliError::Validation(_) => 2,
                CliError::Runtime(_) => 1,
            })
        }
    }
}
