//! `latzeta`: command-line access to the lattice zeta toolkit.
//!
//! Exit codes: 0 success, 1 a requested check failed or a certificate was
//! refuted, 2 bad arguments or a domain error, 3 unsupported dimension,
//! 4 non-coprime certificate arguments.

mod commands;
mod config;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latzeta::Normalization;

use commands::Route;
use config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "latzeta", version, about = "Lattice sums, Ruelle-type L-functions and torus determinants")]
struct Cli {
    /// TOML run configuration; flags override its keys
    #[arg(long, env = "LATZETA_CONFIG", global = true)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write the result here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lattice truncation radius
    #[arg(long, global = true)]
    radius: Option<f64>,
    #[arg(long, global = true)]
    ell_limit: Option<u32>,
    #[arg(long, global = true)]
    mobius_limit: Option<u32>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    sieve_limit: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Representation counts r_ν(n), primitive counts and M_ν(n,x)
    Arith {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        x: f64,
        /// Compare the divisor-sum closed form with counting (ν ∈ {2,4,6,8})
        #[arg(long)]
        check_closed: bool,
    },
    /// log L(s,α) of the Ruelle-type L-function by one or all routes
    Lfun {
        #[arg(long)]
        nu: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
    },
    /// Nonvanishing certificate for R_ν at m/n
    Boundary {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 50)]
        prime_limit: u64,
        #[arg(long)]
        series_terms: Option<u64>,
    },
    /// det(Δ + s²) on the torus, optionally with the ladder check
    Detlap {
        #[arg(long)]
        nu: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long)]
        verify: bool,
    },
    /// Partial sums of M_ν(n,x) against their predicted asymptotics
    Tauber {
        #[arg(long)]
        nu: usize,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long = "X", alias = "cutoff")]
        cutoff: u64,
        #[arg(long, value_enum, default_value_t = Norm::Printed)]
        normalization: Norm,
        /// Accepted |ratio − 1|
        #[arg(long)]
        band: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum Norm {
    Printed,
    Perron,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<latzeta::Error>() {
        Some(latzeta::Error::UnsupportedDimension(_)) => 3,
        Some(latzeta::Error::NotCoprime { .. }) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let band = match &cli.command {
        Command::Tauber { band, .. } => *band,
        _ => None,
    };
    let flags = RunConfig {
        radius: cli.radius,
        ell_limit: cli.ell_limit,
        mobius_limit: cli.mobius_limit,
        tol: cli.tol,
        sieve_limit: cli.sieve_limit,
        format: cli.format,
        output: cli.output.clone(),
        threads: cli.threads,
        band,
    };
    flags.validate()?;
    let cfg = file.merge(flags);
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let report = match cli.command {
        Command::Arith { nu, max, x, check_closed } => commands::arith(&cfg, nu, max, x, check_closed)?,
        Command::Lfun { nu, s, alpha, route } => {
            let s = parse::complex(&s)?;
            commands::lfun(&cfg, nu, s, &parse::alpha(&alpha, nu)?, route)?
        }
        Command::Boundary { nu, m, n, prime_limit, series_terms } => {
            commands::boundary(nu, m, n, prime_limit, series_terms)?
        }
        Command::Detlap { nu, s, alpha, verify } => {
            let s = parse::complex(&s)?;
            commands::detlap(&cfg, nu, s, &parse::alpha(&alpha, nu)?, verify)?
        }
        Command::Tauber { nu, x, cutoff, normalization, .. } => {
            let norm = match normalization {
                Norm::Printed => Normalization::Printed,
                Norm::Perron => Normalization::Perron,
            };
            commands::tauber(&cfg, nu, x, cutoff, norm)?
        }
    };
    report.emit(cfg.format.unwrap_or_default(), cfg.output.as_deref())?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
