//! The `eulerprod` command line. [`run`] parses arguments, dispatches to a
//! subcommand and maps failures onto exit codes.

mod commands;
mod factors;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use factors::{load_object, parse_override};
pub use output::Sink;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] eulerprod::Error),
}

impl CliError {
    pub fn module(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "args",
            CliError::Core(e) => e.module(),
        }
    }

    /// 2 for bad input (including a prime the characters do not fit),
    /// 4 for size limits, 3 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_capacity() => 4,
            CliError::Core(
                eulerprod::Error::InvalidArgument(_) | eulerprod::Error::Parse(_) | eulerprod::Error::IncompatiblePrime { .. },
            ) => 2,
            CliError::Core(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "eulerprod", version, about = "Dirichlet-series and modular-form coefficients")]
struct Cli {
    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the binary record format instead of text.
    #[arg(long, global = true)]
    binary: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Primes and coprime decompositions k = p^e * m below a bound.
    Sieve {
        #[arg(long)]
        length: u64,
        #[arg(long)]
        print_decomps: bool,
    },
    /// Coefficients of the Eisenstein series E_k^{phi,psi}.
    Eisenstein {
        #[arg(long)]
        weight: u32,
        /// Conrey label N,a of phi.
        #[arg(long, value_parser = parse_label)]
        phi: (u64, u64),
        #[arg(long, value_parser = parse_label)]
        psi: (u64, u64),
        #[arg(long)]
        length: usize,
        /// Reduce modulo this prime instead of computing exactly.
        #[arg(long)]
        prime: Option<u64>,
        /// Also print the constant term as index 0.
        #[arg(long)]
        constant: bool,
    },
    /// Expand an Euler product given by a factor file.
    EulerExpand {
        #[arg(long)]
        factors: String,
        #[arg(long)]
        length: u64,
    },
    /// Tensor product of the L-series given by several factor files.
    Tensor {
        #[arg(long, required = true)]
        factors: Vec<String>,
        #[arg(long)]
        length: u64,
        /// Local factor p=1,c1,... replacing the tensor factor at p.
        #[arg(long = "override")]
        overrides: Vec<String>,
    },
    /// Symmetric power of the L-series given by a factor file.
    Sympow {
        #[arg(long)]
        factors: String,
        #[arg(long)]
        power: usize,
        #[arg(long)]
        length: u64,
        #[arg(long = "override")]
        overrides: Vec<String>,
    },
    /// Modular-form coefficients from an Eisenstein-product decomposition.
    MfCoefs {
        /// A decomposition file, or the name of a bundled one.
        #[arg(long)]
        decomp: String,
        #[arg(long)]
        length: usize,
        /// First FFT prime; further primes are added when the bound needs them.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, conflicts_with = "all")]
        primes_only: bool,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 52)]
        min_bits: u32,
    },
    /// Triple-product L-series of three newforms of a common level.
    Triple {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        length: usize,
    },
    /// Time one pipeline and report operation counts.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchTarget {
    Sieve,
    Eisenstein,
    Euler,
    Mf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    target: BenchTarget,
    #[arg(long)]
    length: usize,
    #[arg(long, default_value_t = 2)]
    weight: u32,
    #[arg(long, value_parser = parse_label, default_value = "23,1")]
    phi: (u64, u64),
    #[arg(long, value_parser = parse_label, default_value = "23,22")]
    psi: (u64, u64),
    #[arg(long, default_value = "level11")]
    decomp: String,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn parse_label(s: &str) -> Result<(u64, u64), String> {
    let (n, a) = s.split_once(',').ok_or("expected N,a")?;
    let n = n.trim().parse().map_err(|_| format!("bad modulus {n:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad Conrey index {a:?}"))?;
    Ok((n, a))
}

/// Runs the command line `args` (program name first). Returns the exit
/// status; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error [{}]: {e}", e.module());
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let target: Box<dyn Write + '_> = match &cli.out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?,
        ),
        None => Box::new(out),
    };
    let binary = cli.binary;
    match cli.cmd {
        Command::Sieve { length, print_decomps } => commands::sieve(target, binary, length, print_decomps, err),
        Command::Eisenstein {
            weight,
            phi,
            psi,
            length,
            prime,
            constant,
        } => commands::eisenstein(target, binary, weight, phi, psi, length, prime, constant),
        Command::EulerExpand { factors, length } => commands::euler_expand(target, binary, &factors, length),
        Command::Tensor {
            factors,
            length,
            overrides,
        } => commands::tensor(target, binary, &factors, length, &overrides),
        Command::Sympow {
            factors,
            power,
            length,
            overrides,
        } => commands::sympow(target, binary, &factors, power, length, &overrides),
        Command::MfCoefs {
            decomp,
            length,
            prime,
            primes_only,
            all: _,
            threads,
            min_bits,
        } => {
            let mode = if primes_only {
                eulerprod::Mode::PrimesOnly
            } else {
                eulerprod::Mode::All
            };
            let opts = eulerprod::MfOptions {
                mode,
                threads,
                min_bits,
                prime,
            };
            commands::mf_coefs(target, binary, &decomp, length, &opts)
        }
        Command::Triple { f, g, h, level, length } => commands::triple(target, binary, [&f, &g, &h], level, length),
        Command::Bench(b) => commands::bench(target, &b),
    }
}
