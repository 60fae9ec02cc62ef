//! `hv`: command-line front end. Every command prints one JSON record per line.

mod commands;
mod record;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use commands::{Command, Sweep};

#[derive(Debug, Parser)]
#[command(name = "hv", version, about = "Cohomology, vanishing certificates and degree bounds on hypersurfaces")]
struct Cli {
    /// Include the derivation in each record
    #[arg(long, global = true)]
    trace: bool,
    /// Sweep the twist l over A..=B, one record per value
    #[arg(long, global = true, value_name = "A:B", allow_hyphen_values = true)]
    table: Option<String>,
    /// Print only the value
    #[arg(long, global = true)]
    plain: bool,
    /// Worker threads for sweeps and rank computations
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn parse_table(s: &str) -> Result<std::ops::RangeInclusive<i64>> {
    let (a, b) = s.split_once(':').context("--table expects A:B")?;
    let a: i64 = a.trim().parse().with_context(|| format!("bad table start {a:?}"))?;
    let b: i64 = b.trim().parse().with_context(|| format!("bad table end {b:?}"))?;
    if a > b {
        bail!("--table {a}:{b} is empty");
    }
    Ok(a..=b)
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let sweep = match &cli.table {
        Some(t) => Sweep::Table(parse_table(t)?),
        None => Sweep::Single,
    };
    let records = commands::run(&cli.command, &sweep)?;
    let mut out = std::io::stdout().lock();
    for rec in records {
        let rec = rec.finish(cli.trace);
        let line = if cli.plain { rec.plain() } else { rec.to_json() };
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
