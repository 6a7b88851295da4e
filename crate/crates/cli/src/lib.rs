//! Configuration, orchestration and reporting for the qreflect
//! verification suites.

pub mod catalog;
pub mod config;
pub mod draw;
pub mod dump;
pub mod grid;
pub mod output;
pub mod runner;

pub use config::{parse_config, ConfigError, Format, RunConfig};
pub use output::emit_report;
pub use runner::{run_suite, RunOutput, Summary};
