//! `faraday`: CSV tables of polarizability, scattering and memory-protocol
//! quantities.
//!
//! Exit codes: 0 ok, 2 usage, 3 infeasible physics, 4 pole inside a grid.

mod atoms;
mod commands;
mod grid;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use faraday_core::scatter::Orientation;
use faraday_core::Error;

use grid::Grid;

#[derive(Parser, Debug)]
#[command(name = "faraday", version, about = "Faraday light-atom interface coefficients and memory fidelity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// builtin name (cs, rb87) or path to an .atom file
    #[arg(long, default_value = "cs", global = true)]
    atom: String,
    /// ground hyperfine manifold, e.g. 4 or 7/2 (default: the atom's)
    #[arg(long = "F", global = true)]
    f: Option<String>,
    /// output file (default stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationArg {
    Par,
    Orth,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Par => Orientation::Parallel,
            OrientationArg::Orth => Orientation::Orthogonal,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    D,
    Detuning,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// tensor polarizability coefficients a0, a1, a2, b1, b2 over detuning
    Coeffs {
        #[command(flatten)]
        common: Common,
        /// -Delta grid in MHz, start:stop:n:log|lin
        #[arg(long, default_value = "600:1e5:100:log")]
        grid: Grid,
    },
    /// light decay A, spin decay B and spin noise C over detuning
    Scatter {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "600:1e5:100:log")]
        grid: Grid,
        /// add closed-form columns (Cs-type F = 4 only) and report the deviation
        #[arg(long)]
        oracle: bool,
    },
    /// memory protocol at unit atomic gain: report, optimum or sweep
    Memory(MemoryArgs),
    /// mean-field Faraday rotation of the Stokes vector and collective spin
    Meanfield(MeanfieldArgs),
}

#[derive(Args, Debug)]
pub struct MemoryArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "par")]
    orientation: OrientationArg,
    /// resonant optical depth
    #[arg(long, default_value_t = 100.0)]
    d: f64,
    /// Delta in MHz (negative is blue)
    #[arg(long, default_value_t = -500.0, allow_negative_numbers = true)]
    detuning: f64,
    /// fixed photon-to-atom ratio N_p/N_a (default: set by the scattering cross section)
    #[arg(long)]
    ratio: Option<f64>,
    /// maximize fidelity over detuning
    #[arg(long)]
    optimize: bool,
    /// search red detuning (Delta > 0) when optimizing
    #[arg(long)]
    red: bool,
    /// ideal protocol without decay
    #[arg(long, conflicts_with_all = ["optimize", "sweep"])]
    zero_decay: bool,
    /// emit a table over optical depth or over detuning
    #[arg(long, value_enum, requires = "grid")]
    sweep: Option<Sweep>,
    /// sweep grid: values of d, or of -Delta in MHz
    #[arg(long)]
    grid: Option<Grid>,
}

#[derive(Args, Debug)]
pub struct MeanfieldArgs {
    #[command(flatten)]
    common: Common,
    /// Delta in MHz
    #[arg(long, default_value_t = -700.0, allow_negative_numbers = true)]
    detuning: f64,
    /// initial collective spin <j> as x,y,z
    #[arg(long, default_value = "4,0,0.8", allow_negative_numbers = true)]
    spin: String,
    /// initial Stokes vector <S> as x,y,z
    #[arg(long, default_value = "1,0,0", allow_negative_numbers = true)]
    stokes: String,
    /// interaction strength g L
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    strength: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
}

/// Error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }

    pub fn pole(msg: impl Into<String>) -> Self {
        Failure { code: 4, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Parse { .. } | Error::Validation(_) => 2,
            Error::NoSolution(_) | Error::Domain(_) => 3,
            Error::Pole { .. } => 4,
            Error::ImaginaryResidue { .. } | Error::Internal(_) => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, msg: format!("i/o: {e}") }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Coeffs { common, grid } => commands::coeffs(&common, &grid),
        Command::Scatter { common, grid, oracle } => commands::scatter(&common, &grid, oracle),
        Command::Memory(args) => commands::memory(&args),
        Command::Meanfield(args) => commands::meanfield(&args),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("faraday: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
