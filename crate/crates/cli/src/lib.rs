//! Parameter sweeps, grids and CSV export for the gravitational cat
//! ergotropy model, plus the `gravcat` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod report;
pub mod sweep;

pub use cli::cli_main;
pub use error::{CliError, ConfigError};
pub use output::{read_csv, to_csv_string, write_csv, OutputRecord, CSV_HEADER};
pub use sweep::{
    run_grid, run_sweep, GridResult, GridSpec, Range, Scale, SweepSpec, SweepVariable,
};
