//! Experiment harness for `ams-detect`: configuration files, τ and depth
//! sweeps averaged over seeded trials, runtime measurement and CSV output.

pub mod config;
pub mod error;
pub mod output;
pub mod stats;
pub mod sweep;

pub use config::{load_config, parse_config};
pub use error::{HarnessError, Result};
pub use sweep::{measure_runtime, sweep_depth, sweep_tau, AccuracySweep, RuntimeSweep};
