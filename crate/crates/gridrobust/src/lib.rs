//! File formats, report emission, parallel drivers and the command-line
//! front end for [`gridrobust_core`].

pub mod cli;
pub mod error;
pub mod gridfile;
pub mod numfmt;
pub mod parallel;
pub mod report;

pub use error::{Error, Location};
pub use gridfile::{parse_grid_csv, parse_grid_json, read_grid, write_grid, GridFormat};
pub use numfmt::Precision;
pub use report::{emit_report, BetweennessView, GridSummary, Report, ReportFormat};
