//! `ahdet`: compute Artin-Hasse coefficients, p-element counts, staircase
//! tableaux and determinants, and run the identity suite.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on a usage or
//! validation error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Debug, Parser)]
#[command(
    name = "ahdet",
    version,
    about = "Exact Artin-Hasse coefficients and determinant identities"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = artin_hasse::verify::DEFAULT_SEED)]
    seed: u64,
    /// Write the rendered output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HnMethod {
    Series,
    Expansion,
    Bruteforce,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    U,
    BinomH,
    Binom,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print u_0..u_n exactly, or reduced mod p.
    Coeff {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mod_p: bool,
    },
    /// Number of p-elements of S_n.
    Hn {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = HnMethod::Series)]
        method: HnMethod,
    },
    /// Determinant of one of the l x l matrices against its closed form.
    Det {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_enum, default_value_t = MatrixKind::U)]
        matrix: MatrixKind,
    },
    /// Size of the staircase tableau set T_n, optionally listing it.
    Tableaux {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        enumerate: bool,
    },
    /// Residues (u_{p^i n + j} mod p) for n = 0..count-1.
    Kernel {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        count: usize,
    },
    /// Matrix of f -> U_p(E f) on 1, x, x^2, ...
    Phi {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        size: usize,
    },
    /// Run the identity suite.
    Verify {
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        /// Largest matrix / tableau size (defaults: 8 for p=2, 6 for p=3, 4 for p=5).
        #[arg(long)]
        max_ell: Option<usize>,
        /// Randomized instances per randomized check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Shift u_N by one before verifying (fault injection).
        #[arg(long, hide = true)]
        perturb_u: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Coeff { p, n, mod_p } => commands::coeff(p, n, mod_p),
        Command::Hn { p, n, method } => commands::hn(p, n, method),
        Command::Det { p, ell, matrix } => commands::det(p, ell, matrix),
        Command::Tableaux { p, n, enumerate } => commands::tableaux(p, n, enumerate),
        Command::Kernel { p, i, j, count } => commands::kernel(p, i, j, count),
        Command::Phi { p, size } => commands::phi(p, size),
        Command::Verify {
            p,
            max_ell,
            trials,
            perturb_u,
        } => commands::verify(&p, max_ell, seed, trials, perturb_u),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    match run(cli) {
        Ok(output) => {
            let rendered = output.render(format);
            let written = match &out {
                Some(path) => std::fs::write(path, &rendered),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if output.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
