mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclotome_core::par::Jobs;
use cyclotome_core::verify::Suite;

/// Exit status: 0 clean, 1 mathematical violation, 2 usage or environment error.
pub enum Status {
    Clean,
    Violation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "cyclotome", version, about = "Heights of cyclotomic and inverse cyclotomic polynomials")]
pub struct Cli {
    /// Output format for coefficient and height listings
    #[arg(long = "out", global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// JSON-lines cache of height records (off unless set)
    #[arg(long, global = true, env = "CYCLOTOME_CACHE")]
    pub cache: Option<PathBuf>,

    /// Worker threads; defaults to all cores
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn jobs(&self) -> Jobs {
        Jobs(self.jobs.map(|j| j as usize))
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Coefficients of Phi_n
    Poly { n: u64 },

    /// Leading coefficients of the power series 1/Phi_n
    Psi {
        n: u64,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },

    /// A, S, C (and optionally B) for one n or a range
    Heights {
        #[arg(required_unless_present = "scan", conflicts_with = "scan")]
        n: Option<u64>,
        /// Scan every n in [MIN, MAX]
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
        scan: Option<Vec<u64>>,
        #[arg(long)]
        odd: bool,
        #[arg(long)]
        squarefree: bool,
        /// Keep only these numbers of distinct prime factors
        #[arg(long, value_delimiter = ',')]
        omega: Vec<usize>,
        /// Also compute B_n for squarefree n
        #[arg(long)]
        with_b: bool,
        /// Largest number of divisor subsets searched for B_n
        #[arg(long, default_value_t = cyclotome_core::heights::DEFAULT_B_LIMIT)]
        limit: u64,
    },

    /// Same as `heights N --with-b`
    Bn {
        n: u64,
        #[arg(long, default_value_t = cyclotome_core::heights::DEFAULT_B_LIMIT)]
        limit: u64,
    },

    /// Decomposition of Phi_n modulo x^n for odd squarefree n with at least three primes
    Decomp { n: u64 },

    /// Interval enclosures of the bound constants
    Constants {
        #[arg(long, default_value = "3/4")]
        eps3: String,
        /// `auto` for eps3 (2 - eps3)/2, or a rational
        #[arg(long, default_value = "auto")]
        d: String,
        /// Largest prime in the empirical search for d
        #[arg(long, default_value_t = 50)]
        prime_box: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(6..=64))]
        kmax: u64,
    },

    /// Run a check suite
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 2000)]
        max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
