mod args;
mod commands;
mod output;
mod tables;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use beatty_core::{Error, Result};
use clap::Parser;

use args::{Cli, Command};
use commands::Ctx;
use output::Format;

const EXIT_CONFIG: u8 = 2;
const EXIT_COMPUTE: u8 = 3;

/// Writes to a sibling temporary file first so a failed run never leaves a
/// truncated artifact behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    commands::check_precision(g.precision)?;
    let format = match &cli.command {
        Command::Decompose(a) if a.json => Format::Json,
        _ => g.format,
    };
    let is_sieve = matches!(cli.command, Command::Sieve(_));
    let ctx = Ctx { seed: g.seed, precision: g.precision, binary: is_sieve && g.out.is_some() };
    let run = commands::run(&cli.command, &ctx)?;
    let comment = format!(
        "beatty-lab v{} seed={} cmd={} --precision {} --format {}",
        env!("CARGO_PKG_VERSION"),
        g.seed,
        run.canonical,
        g.precision,
        format.name()
    );
    let text = output::render(&run.table, format, &comment)?;
    match (&g.out, run.binary) {
        (Some(path), Some(bin)) => {
            write_atomic(path, &bin)?;
            std::io::stdout().write_all(&text)?;
        }
        (Some(path), None) => write_atomic(path, &text)?,
        (None, _) => std::io::stdout().write_all(&text)?,
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_COMPUTE
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 for --help/--version
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(exit_code(&e))
        }
    }
}
