//! Configuration, persistence and run orchestration.

pub mod config;
pub mod csv;
pub mod run;
pub mod snapshot;

pub use self::config::{parse_config, serialize_config, InitialSpec, RunConfig, SnapshotPolicy};
pub use self::csv::{read_diagnostics, read_diagnostics_from, write_diagnostics, write_diagnostics_to};
pub use self::run::{
    build_initial, check_snapshot, exit_code, gauge_demo, linear_solution, run, run_estimates,
    estimate_batch, EstimatesReport, GaugeReport, RunOptions, RunSummary,
};
pub use self::snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot};
