mod commands;
mod config;
mod funcspec;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Exit;
use config::{CommonArgs, RunConfig, TOL_ENV};

/// Spectral transforms, positivity tests and L_p comparison certificates
/// for even functions on the sphere.
///
/// Exit status: 0 verified / member, 1 falsified / non-member,
/// 2 indeterminate, 3 usage or configuration error.
#[derive(Debug, Parser)]
#[command(name = "spherepos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiplier table of T_q or R, optionally applied to a function
    Transform {
        #[command(flatten)]
        common: CommonArgs,
        /// Function spec to transform
        #[arg(long)]
        f: Option<String>,
        /// tq or radon
        #[arg(long, default_value = "tq")]
        transform: String,
        /// raw, gamma-normalized, profile or cosine
        #[arg(long, default_value = "raw")]
        normalization: String,
    },
    /// Positivity test of h (membership in Pos for the normalized T_q)
    Postest {
        #[command(flatten)]
        common: CommonArgs,
        /// Function spec; alternatively --input FILE
        #[arg(long)]
        f: Option<String>,
    },
    /// Measures the comparison hypothesis and conclusion for f and g
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Builds a certified counterexample f = g - εψ
    Synthesize {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        g: String,
        /// Initial band limit of the bump
        #[arg(long)]
        bump_band: Option<usize>,
        /// Fraction of the witness region used for the smooth transition, in (0, 1]
        #[arg(long)]
        smooth_width: Option<f64>,
    },
    /// Re-checks a certificate file from scratch
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Slicing bound ‖f‖_p ≤ |S^{n-1}|^{1/p} max Ť_q f / c_{n,q}
    Slicing {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        f: String,
    },
    /// Unit ball against a scaled perturbed ball with larger sections
    BpDemo {
        #[command(flatten)]
        common: CommonArgs,
        /// Perturbation amplitude
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        a: f64,
        /// Perturbation degree
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Runs the acceptance suite
    Selftest,
}

fn run(cli: Cli) -> anyhow::Result<Exit> {
    let env_tol = std::env::var(TOL_ENV).ok();
    let resolve = |name: &str, common: &CommonArgs| RunConfig::resolve(name, common, env_tol.clone());
    match cli.command {
        Command::Transform {
            common,
            f,
            transform,
            normalization,
        } => commands::transform(&resolve("transform", &common)?, f.as_deref(), &transform, &normalization),
        Command::Postest { common, f } => commands::postest(&resolve("postest", &common)?, f.as_deref()),
        Command::Compare { common, f, g } => commands::compare(&resolve("compare", &common)?, &f, &g),
        Command::Synthesize {
            common,
            g,
            bump_band,
            smooth_width,
        } => commands::synthesize_cmd(&resolve("synthesize", &common)?, &g, bump_band, smooth_width),
        Command::Verify { common } => commands::verify(&resolve("verify", &common)?),
        Command::Slicing { common, f } => commands::slicing(&resolve("slicing", &common)?, &f),
        Command::BpDemo { common, a, k } => commands::bp_demo(&resolve("bp-demo", &common)?, a, k),
        Command::Selftest => commands::selftest(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Exit::Usage as u8);
        }
    };
    match run(cli) {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(Exit::Usage as u8)
        }
    }
}
