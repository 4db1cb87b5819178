//! Suite configuration, execution and reporting behind the command-line front end.

pub mod config;
pub mod identity_suite;
pub mod report;
pub mod run;

pub use config::{parse_config, SuiteConfig};
pub use identity_suite::{identity_suite, IdentityOutcome};
pub use report::{emit_report, ReportFormat};
pub use run::{run_suite, LogRecord, Outcome, RunSummary, Task};
