//! The `imoments` command-line tool.

mod args;
mod commands;
mod config;
mod error;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Common};
pub use config::{parse_config, RunConfig};
pub use error::CliError;

/// Runs the tool on `argv` and returns the process exit status.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Usage(_) = e {
                eprintln!("run `imoments --help` for usage");
            }
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let common = config::merge(cli.common)?;
    let default_kind = match cli.command {
        Command::Classify { .. } => "gpzm",
        _ => "cheby",
    };
    let rc = RunConfig::from_common(&common, default_kind)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = rc.threads {
            b = b.num_threads(t);
        }
        b.build().map_err(|e| CliError::runtime(e.to_string()))?
    };
    pool.install(|| dispatch(cli.command, &rc))
}

fn dispatch(command: Command, rc: &RunConfig) -> Result<(), CliError> {
    match command {
        Command::Moments { input, output } => commands::moments(&input, output.as_deref(), rc),
        Command::Invariants { input, output } => commands::invariants(&input, output.as_deref(), rc),
        Command::Reconstruct { moments, output } => commands::reconstruct(&moments, &output, rc.order),
        Command::Polar { input, output } => commands::polar(&input, &output, rc),
        Command::Unpolar { input, output, meta } => commands::unpolar(&input, &output, meta.as_deref()),
        Command::Bench { input, orders, size, seed, output } => {
            commands::bench(input.as_deref(), &orders, size, seed, output.as_deref(), rc)
        }
        Command::Classify { train, test, k, raw_features, output } => {
            commands::classify(&train, &test, k, raw_features, output.as_deref(), rc)
        }
        Command::Tables { size, output } => commands::tables(size, output.as_deref(), rc),
        Command::Shapes { out, per_class, size, seed, train_per_class } => {
            commands::shapes(&out, per_class, size, seed, train_per_class)
        }
    }
}
