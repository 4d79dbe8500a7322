//! Command-line surface. `run` maps argv to an exit code:
//! 0 all checks pass, 1 a check failed or the numerics aborted, 2 usage error.

pub mod battery;
mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run_command, RunConfig};
pub use report::{Report, Status, Table};

use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "nahm5", version, about = "Generalized Nahm flows and their twistor checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Involution, equivariance, invariant norm, frames and forms.
    TwistorCheck {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Transition-function checks for the bundle with exponent (a, b, c).
    BundleCheck {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Flow integration, residue construction and boundary certification.
    Nahm {
        #[command(subcommand)]
        action: NahmCommand,
    },
    /// Exact formal-neighborhood identities.
    Identities {
        #[arg(long, default_value_t = 10)]
        max_m: usize,
    },
    /// Every battery.
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum NahmCommand {
    /// Integrate a state; writes the (z, drift) CSV and optionally the final state.
    Integrate(IntegrateArgs),
    /// Print the residue triple of charge k and its certificate.
    Residues {
        #[arg(long)]
        k: usize,
    },
    /// Certify a residue triple read from JSON {"r0", "r2", "r4"}.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Rk4,
    Rk45,
}

#[derive(Args, Debug, Clone)]
pub struct IntegrateArgs {
    #[arg(long, required_unless_present = "init")]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0.8)]
    pub z0: f64,
    #[arg(long, default_value_t = 1.2)]
    pub z1: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Error tolerance for rk45.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
    pub method: MethodArg,
    /// Initial state JSON ({"z", "pencil": {"k", "a"}}); overrides --k, --z0, --seed.
    #[arg(long, conflicts_with = "k")]
    pub init: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    pub sample_every: usize,
}

/// Parse and run; never panics on bad input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let usage = matches!(e, Error::Config(_) | Error::OutOfRange(_));
            let diag = serde_json::json!({ "error": e.kind(), "message": e.to_string(), "last_z": e.last_z() });
            if usage {
                eprintln!("error: {e}");
                return 2;
            }
            if !matches!(&e, Error::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe) {
                let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&diag).expect("json"));
            }
            1
        }
    }
}
