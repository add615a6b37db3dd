mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use config::QueryKind;
use report::RunOptions;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Validity(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Validity(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Evaluate root-datum, Weyl-group, ordinary-part and Ext¹ queries from a TOML config.
#[derive(Debug, Parser)]
#[command(name = "ordinext", version)]
struct Args {
    /// Path to the TOML config.
    #[arg(long)]
    config: PathBuf,
    /// Query kind, overriding `query.kind`.
    #[arg(long)]
    query: Option<String>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Evaluate ordinary parts outside the proven degree range.
    #[arg(long)]
    override_validity: bool,
    /// Value of dim Ext¹_T(χ, χ) when [F:Qp] > 1.
    #[arg(long)]
    torus_ext_dim: Option<u64>,
    /// Largest Weyl group to enumerate.
    #[arg(long, default_value_t = ordinext::weyl::DEFAULT_MAX_ORDER)]
    max_weyl: usize,
}

fn run(args: &Args) -> Result<String, CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", args.config.display())))?;
    let cfg = config::parse(&text)?;
    let kind = match &args.query {
        Some(q) => QueryKind::parse(q)
            .ok_or_else(|| CliError::Parse(format!("--query: unknown query `{q}`")))?,
        None => cfg.query.kind,
    };
    let setup = config::resolve(&cfg)?;
    let opts = RunOptions {
        override_validity: args.override_validity,
        torus_ext_dim: args.torus_ext_dim,
        max_weyl: args.max_weyl,
    };
    let rep = report::run(&setup, &cfg.query, kind, &opts)?;
    Ok(match args.format {
        Format::Human => report::human(&rep),
        Format::Machine => report::machine(&rep),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ordinext: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
