mod cli;
mod commands;
mod inputs;
mod output;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use cli::{Cli, Command, Format};

/// Exit status for usage and input errors.
const EXIT_USAGE: u8 = 2;

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("GSWF_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .with_context(|| format!("GSWF_THREADS={v:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("cannot size the worker pool")
}

fn run(cli: &Cli) -> Result<u8> {
    configure_threads()?;
    let default = match cli.command {
        Command::Curve(_) => Format::Csv,
        _ => Format::Json,
    };
    let format = cli.format.unwrap_or(default);
    let mut w = output::sink(cli.out.as_deref())?;
    let code = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, format, &mut *w)?,
        Command::Rationality(a) => commands::rationality(a, format, &mut *w)?,
        Command::Verify(a) => commands::verify(a, format, &mut *w)?,
        Command::Search(a) => commands::search(a, format, &mut *w)?,
        Command::Simulate(a) => commands::simulate(a, format, &mut *w)?,
        Command::Catalog { action } => commands::catalog(action, format, &mut *w)?,
        Command::Curve(a) => commands::curve(a, format, &mut *w)?,
    };
    w.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
