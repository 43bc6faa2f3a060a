mod args;
mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use prabhakar::EvalConfig;

use args::{Cli, Command};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] prabhakar::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Lib(prabhakar::Error::NonConvergence { .. }) => commands::EXIT_NON_CONVERGENCE,
            CliError::Lib(_) => EXIT_DOMAIN,
        }
    }
}

fn run(cli: &Cli, cmd_line: &str) -> Result<u8, CliError> {
    let cfg = EvalConfig::new(cli.rel_tol, cli.max_terms.unwrap_or(EvalConfig::DEFAULT_MAX_TERMS))?;
    let outcome = match &cli.command {
        Command::Eval(e) => commands::eval(cmd_line, e, &cfg)?,
        Command::Dist(d) => commands::dist(cmd_line, d, &cfg)?,
        Command::Certify(c) => commands::certify(cmd_line, c, &cfg)?,
    };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    output::write_records(&outcome.records, cli.format, &mut sink)?;
    sink.flush()?;
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let cmd_line = std::env::args().collect::<Vec<_>>().join(" ");
    match run(&cli, &cmd_line) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
