//! Finite-field statistics for the one-apparent-double-point and Bronowski
//! properties, and the aggregated report.

pub mod bronowski;
pub mod config;
pub mod report;
pub mod secant;

pub use bronowski::{bronowski_fiber_statistic, FiberStatistic};
pub use config::RunConfig;
pub use report::{full_report, CheckOutcome, CheckStatus, OadpReport, SCHEMA_VERSION};
pub use secant::{oadp_statistic, secant_count_through, ChartImages, OadpStatistic, SecantSample};
