//! Experiment runner for the `coulomb-gaps` library.
//!
//! Resolves a run from a TOML file and command line overrides, samples the
//! trials on a thread pool (each trial owns its random stream, so results do
//! not depend on the thread count), and writes CSV tables plus a JSON
//! report.

pub mod config;
pub mod error;
pub mod experiment;
pub mod kernel_checks;
pub mod output;
pub mod report;
pub mod theory_report;

pub use config::{ConfigFile, ExperimentConfig, Overrides};
pub use error::{CliError, Result};
pub use experiment::{run_gap_experiment, run_gap_extraction, run_sampling, simulate, Simulation, TrialOutcome};
pub use kernel_checks::run_kernel_checks;
pub use report::ExperimentReport;
pub use theory_report::run_theory_report;
