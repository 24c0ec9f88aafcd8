//! Command-line front end for `unruh-pair-core`: every figure dataset as a
//! CSV or JSON table from one command.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{Cli, RunConfig};
pub use error::AppError;

/// Resolve, compute and emit. Returns the resolved config on success.
pub fn execute(cli: Cli) -> Result<RunConfig, AppError> {
    let (name, opts) = cli.command.split();
    let cfg = RunConfig::resolve(name, &opts)?;
    let table = commands::run(&cfg)?;
    if opts.gnuplot_hint {
        eprintln!("{}", commands::gnuplot_hint(&cfg));
    }
    output::emit(&table, &cfg)?;
    Ok(cfg)
}
