//! `cantorval`: classify digit laws, evaluate characteristic functions,
//! explore the cover geometry, convert expansions, sample and bracket CDFs.

mod commands;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cantorval::{Error, Limits};
use output::Format;

pub const ENV_MAX_ITEMS: &str = "CANTORVAL_MAX_ITEMS";

#[derive(Parser, Debug)]
#[command(
    name = "cantorval",
    version,
    about = "Restricted-digit expansions and their random series"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct LawArgs {
    /// Inline JSON `{"s":..,"p":[..]}`, `gn:q0` or `multigeo:m:q0`.
    #[arg(long, conflicts_with = "law_file")]
    pub law: Option<String>,

    #[arg(long)]
    pub law_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the law of the random series is singular or absolutely continuous.
    Classify {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = 60)]
        depth: u32,
    },
    /// Truncated characteristic function with certified error radii.
    Charfn {
        #[command(flatten)]
        law: LawArgs,
        /// Comma list (`0,2pi,8pi`) or `start:stop:count`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 40)]
        depth: u32,
    },
    /// Covers, gaps, measure, dimension and the maximal interval.
    Geometry {
        #[command(subcommand)]
        action: GeometryAction,
    },
    /// Rewrite a classical expansion without the digits 1 and s.
    Convert {
        #[arg(long, default_value_t = 4)]
        s: u32,
        /// Digit string such as `3.1.1.(0)`; digits above 9 in brackets.
        #[arg(long, required_unless_present = "value", conflicts_with = "value")]
        x: Option<String>,
        /// A rational in the maximal interval, as `p/q` or a decimal.
        #[arg(long)]
        value: Option<String>,
    },
    /// Monte Carlo draws of the truncated series.
    Sample {
        #[command(flatten)]
        law: LawArgs,
        /// Block series `m:q0` instead of a digit law.
        #[arg(long, conflicts_with_all = ["law", "law_file"])]
        eta: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long = "N", default_value_t = 30)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certified CDF brackets, optionally against an empirical CDF.
    Cdf {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long = "N", default_value_t = 20)]
        depth: usize,
        /// Comma list of points, read exactly.
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "check",
            conflicts_with = "check"
        )]
        x: Option<String>,
        /// Compare a sample with the brackets on a grid over the hull.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum GeometryAction {
    /// Bounded gaps of the cover inside the hull.
    Gaps(GeomArgs),
    /// Components of the rank-k cylinder cover.
    Cover(GeomArgs),
    /// Component count and length of the cover per depth.
    Measure(GeomArgs),
    /// Boundary dimension: closed form and box-counting slope.
    Dims {
        #[arg(long, default_value_t = 4)]
        s: u32,
        /// Comma list or `a..b`; defaults depend on s.
        #[arg(long)]
        depths: Option<String>,
    },
    /// The maximal interval contained in the set.
    Interval {
        #[arg(long, default_value_t = 4)]
        s: u32,
    },
}

#[derive(Args, Debug)]
pub struct GeomArgs {
    #[arg(long, default_value_t = 4)]
    pub s: u32,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
}

fn limits_from_env() -> Result<Limits, Error> {
    match std::env::var(ENV_MAX_ITEMS) {
        Ok(v) => {
            v.trim().parse().map(Limits::new).map_err(|_| {
                Error::InvalidArgument(format!("{ENV_MAX_ITEMS}={v:?} is not a count"))
            })
        }
        Err(_) => Ok(Limits::default()),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Resource { .. } => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<output::Report, Error> {
    let limits = limits_from_env()?;
    match cli.command {
        Command::Classify { law, depth } => commands::classify(&law, depth),
        Command::Charfn { law, t, depth } => commands::charfn(&law, &t, depth),
        Command::Geometry { action } => commands::geometry(action, &limits),
        Command::Convert { s, x, value } => commands::convert(s, x.as_deref(), value.as_deref()),
        Command::Sample {
            law,
            eta,
            n,
            depth,
            seed,
        } => commands::sample(&law, eta.as_deref(), n, depth, seed, &limits),
        Command::Cdf {
            law,
            depth,
            x,
            check,
            samples,
            seed,
        } => commands::cdf(&law, depth, x.as_deref(), check, samples, seed, &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let path = cli.output.clone();
    match run(cli) {
        Ok(report) => {
            if let Err(e) = report.write(format, path.as_deref()) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::from(report.exit_code as u8);
                }
                eprintln!("cantorval: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("cantorval: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
