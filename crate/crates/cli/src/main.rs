//! `opinion-bias`: run simulations, check bias conditions, export weight
//! surfaces and print the baseline counterexamples.
//!
//! Exit codes: 0 success or all items pass, 1 usage or configuration error,
//! 2 model infeasibility, 3 condition-check failure.

mod baselines;
mod check;
mod family;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "opinion-bias",
    version,
    about = "Opinion dynamics with asymmetric bias"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more experiment configurations.
    Simulate {
        /// Experiment JSON. Repeat to run several configurations concurrently;
        /// each then writes into `<out-dir>/<config stem>/`.
        #[arg(long, required = true)]
        config: Vec<PathBuf>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Check a weight family against the bias or decomposition conditions.
    Check {
        #[arg(long)]
        family: String,
        /// Comma-separated `name=value` pairs, e.g. `chi=0.6,gamma=0.011`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        which: Which,
        #[arg(long, default_value_t = 41)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = OrientationArg::Corrected)]
        orientation: OrientationArg,
        /// Half-width around 0 treated as signless.
        #[arg(long, default_value_t = 0.0)]
        exclusion_band: f64,
        #[arg(long, default_value_t = opinion_bias::verifier::GridSpec::DEFAULT_MAX_WITNESSES)]
        max_witnesses: usize,
        /// Margin a strict inequality must clear.
        #[arg(long, default_value_t = 0.0)]
        tol_strict: f64,
        /// Slack for distance comparisons.
        #[arg(long, default_value_t = 0.0)]
        tol_distance: f64,
        /// Slack for equality items.
        #[arg(long, default_value_t = 1e-12)]
        tol_equality: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate a family over the grid as `x_i,x_j,c`.
    Surface {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 41)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Show why the symmetric, bounded-confidence and biased-assimilation
    /// weights miss the asymmetric bias.
    Baselines {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Confirmation,
    Negativity,
    Theorem1,
    Theorem2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    AsWritten,
    Corrected,
}

impl From<OrientationArg> for opinion_bias::Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::AsWritten => opinion_bias::Orientation::AsWritten,
            OrientationArg::Corrected => opinion_bias::Orientation::Corrected,
        }
    }
}

/// A command outcome other than plain success.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Infeasible(String),
    CheckFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::CheckFailed => 3,
        }
    }
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::Config(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, contents)
        .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate { config, out_dir } => simulate::run(&config, &out_dir),
        Command::Check {
            family,
            params,
            which,
            resolution,
            orientation,
            exclusion_band,
            max_witnesses,
            tol_strict,
            tol_distance,
            tol_equality,
            out,
        } => check::run(check::CheckArgs {
            family: &family,
            params: &params,
            which,
            resolution,
            orientation: orientation.into(),
            exclusion_band,
            max_witnesses,
            tol: opinion_bias::Tolerances {
                distance: tol_distance,
                strict: tol_strict,
                equality: tol_equality,
            },
            out: &out,
        }),
        Command::Surface {
            family,
            params,
            resolution,
            out,
        } => {
            let fam = family::parse(&family, &params)?;
            let csv = opinion_bias::export::surface_csv(&fam, resolution).ok_or_else(|| {
                Failure::Config(format!("resolution must be at least 2, got {resolution}"))
            })?;
            write_file(&out, &csv)?;
            println!("wrote {} ({} rows)", out.display(), resolution * resolution);
            Ok(())
        }
        Command::Baselines { out } => baselines::run(out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Config(msg) => eprintln!("error: {msg}"),
                Failure::Infeasible(msg) => eprintln!("infeasible: {msg}"),
                Failure::CheckFailed => {}
            }
            ExitCode::from(f.code())
        }
    }
}
