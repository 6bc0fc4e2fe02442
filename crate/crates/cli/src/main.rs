use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use hochschild_core::{Algebra, FieldSpec};

mod commands;

#[derive(Parser)]
#[command(name = "hochschild", version, about = "Hochschild cohomology of the double-arrow cycle algebras, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-degree dimensions of Hom, Ker, Im and HH, with the closed form when s >= 3.
    Dims(Common),
    /// Check d∘d = 0, exactness, minimality and the generator recursion.
    VerifyResolution(Common),
    /// Check the explicit image, kernel and cohomology bases (s >= 3).
    VerifyBases(Common),
    /// Products z_k × z_l of the polynomial generators (s >= 3).
    Yoneda {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Generic)]
        method: Method,
    },
    /// Check the presentation modulo nilpotence and sample nilpotent classes (s >= 3).
    RingCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Generic)]
        method: Method,
        /// Highest number of generator factors to multiply.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=3))]
        powers: u64,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Number of vertices of the cycle.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    s: u64,
    /// Characteristic of the ground field: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Highest degree to examine [default: 3s+2].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Theta,
    Generic,
}

/// Validated run parameters.
pub struct RunConfig {
    pub alg: Algebra,
    pub max_degree: usize,
    pub format: Format,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

impl Common {
    fn config(&self, needs_formula: bool) -> RunConfig {
        let field = FieldSpec::new(self.characteristic).unwrap_or_else(|e| usage_error(e));
        let s = self.s as usize;
        if needs_formula && s < 3 {
            usage_error(format!("this command needs s >= 3, got s = {s}"));
        }
        let alg = Algebra::new(s, field).unwrap_or_else(|e| usage_error(e));
        let max_degree = self.max_degree.map_or(3 * s + 2, |n| n as usize);
        RunConfig { alg, max_degree, format: self.format }
    }
}

/// Rendered output and whether every check passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>)> {
    let (outcome, common) = match &cli.command {
        Command::Dims(c) => (commands::dims(&c.config(false))?, c),
        Command::VerifyResolution(c) => (commands::verify_resolution(&c.config(false))?, c),
        Command::VerifyBases(c) => (commands::verify_bases(&c.config(true))?, c),
        Command::Yoneda { common, method } => (commands::yoneda(&common.config(true), *method)?, common),
        Command::RingCheck { common, method, powers } => {
            (commands::ring_check(&common.config(true), *method, *powers as usize)?, common)
        }
    };
    Ok((outcome, common.out.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|(outcome, out)| {
        match out {
            Some(path) => fs::write(&path, &outcome.body).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{}", outcome.body),
        }
        Ok(outcome.passed)
    }) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
