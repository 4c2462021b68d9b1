//! File formats and command implementations on top of `phaselab-core`.
//!
//! - [`schedule_file`]: the `phaselab-schedule v1` text format.
//! - [`records`]: CSV/JSON rows for time series, sweeps and breakdowns.
//! - [`commands`]: `run`, `breakdown`, `sweep` and `readout`.

pub mod commands;
pub mod records;
pub mod schedule_file;

pub use commands::{CliError, GridRange, Report, RunFormat, SweepConfig};
pub use schedule_file::{parse_schedule, serialize, ScheduleFileError};
