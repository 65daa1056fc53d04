//! `kselberg`: enumeration, class data, lattice sums, zeta and trace-formula
//! reports for the Picard and Eisenstein-Picard groups.

mod commands;
mod config;
mod report;

use clap::{Args, Parser, Subcommand};
use config::Overrides;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Lib(#[from] kleinian_selberg::Error),
    #[error("cannot write output: {0}")]
    Output(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Output(_) => 2,
            CliError::Lib(e) if e.is_data_error() => 2,
            CliError::Lib(e) if e.is_numerical_error() => 3,
            CliError::Lib(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "kselberg", version, about = "Trace formula and zeta function computations for Bianchi groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Config file of `key = value` lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// picard or eisenstein
    #[arg(long, global = true)]
    group: Option<String>,
    /// trivial, a built-in name (sign, cubic, perm) or a representation JSON file
    #[arg(long, global = true)]
    rep: Option<String>,
    /// Enumeration height (largest entry norm)
    #[arg(long, global = true)]
    height: Option<String>,
    /// Bound on N(T) for loxodromic classes
    #[arg(long = "norm-bound", global = true)]
    norm_bound: Option<String>,
    /// Truncation height A
    #[arg(long = "A", global = true)]
    a: Option<String>,
    /// Quadrature tolerance
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Output file (default stdout)
    #[arg(long, global = true)]
    out: Option<String>,
    /// text, csv or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Directory of enumeration caches
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<String>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            group: self.group.clone(),
            rep: self.rep.clone(),
            height: self.height.clone(),
            norm_bound: self.norm_bound.clone(),
            a: self.a.clone(),
            tol: self.tol.clone(),
            out: self.out.clone(),
            format: self.format.clone(),
            cache_dir: self.cache_dir.clone(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the group up to the height, write the cache, count kinds
    Enumerate,
    /// List loxodromic, cuspidal elliptic and non-cuspidal elliptic classes
    Classify,
    /// Lattice L-value by direct summation and by the Kronecker limit formula
    Lsum {
        /// First character parameter, a fraction like 1/2 or a decimal
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Second character parameter
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Lattice: i, omega or 1+omega (default: the group's cusp lattice)
        #[arg(long)]
        tau: Option<String>,
        /// Cutoff of the direct sum
        #[arg(long = "x-max", default_value_t = 1e6)]
        x_max: f64,
    },
    /// Exact residual of the cuspidal-elliptic identity
    Identity,
    /// Zeta values, log-derivative check, divisor and meromorphy order
    Zeta {
        /// Comma-separated real parts s > 1
        #[arg(long, default_value = "2,2.5")]
        s: String,
        /// tr S(0) (default k∞)
        #[arg(long = "trs0", allow_hyphen_values = true)]
        trs0: Option<i64>,
        /// Number of negative integers in the divisor
        #[arg(long, default_value_t = 50)]
        depth: usize,
        /// Write the divisor CSV here
        #[arg(long)]
        divisor: Option<PathBuf>,
    },
    /// Geometric side for the resolvent pair and the log A cancellation check
    Trace {
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long = "B", default_value_t = 3.0)]
        b: f64,
        /// tr S(0) for the Ξ cross-check (default k∞)
        #[arg(long = "trs0", allow_hyphen_values = true)]
        trs0: Option<i64>,
    },
    /// Finite-difference eigenfunction check of the Eisenstein series
    EisensteinCheck {
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        /// x,y,r
        #[arg(long, default_value = "0.3,0.2,1.1")]
        point: String,
        #[arg(long = "fd-step", default_value_t = 1e-3)]
        fd_step: f64,
        /// Coset height (default: --height)
        #[arg(long = "series-height")]
        series_height: Option<i64>,
    },
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return Ok(());
            }
            return Err(CliError::Usage(e.to_string().trim_end().to_string()));
        }
    };
    let file = match &cli.common.config {
        Some(p) => Overrides::read_file(p)?,
        None => Overrides::default(),
    };
    let cfg = cli.common.overrides().over(file).resolve()?;
    let report = match &cli.command {
        Command::Enumerate => commands::enumerate(&cfg)?,
        Command::Classify => commands::classify(&cfg)?,
        Command::Lsum { u, v, tau, x_max } => commands::lsum(&cfg, u, v, tau.as_deref(), *x_max)?,
        Command::Identity => commands::identity(&cfg)?,
        Command::Zeta { s, trs0, depth, divisor } => commands::zeta(&cfg, s, *trs0, *depth, divisor.as_deref())?,
        Command::Trace { s, b, trs0 } => commands::trace(&cfg, *s, *b, *trs0)?,
        Command::EisensteinCheck { s, point, fd_step, series_height } => {
            commands::eisenstein_check(&cfg, *s, point, *fd_step, *series_height)?
        }
    };
    let text = report.0.render(cfg.format);
    match &cfg.out {
        Some(p) => commands::write_atomic(p, text.as_bytes()).map_err(CliError::Output)?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::Output)?,
    }
    report.1
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kselberg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
