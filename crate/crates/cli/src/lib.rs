//! Instance parsing, suite orchestration and reporting for `qcat`.

pub mod instance;
pub mod report;
pub mod suite;

pub use instance::{parse_instance, ErrorCode, Instance, InstanceError};
pub use report::{emit_report, Format, Report, Status};
pub use suite::{check_instance, run_suite, SuiteConfig, SuiteError, SuiteName};

/// Exit code for malformed input or configuration.
pub const EXIT_INPUT: i32 = 3;
