//! Named, seeded verification checks over `qnk-core`, and the report format
//! the `qnk` binary writes.

pub mod check;
pub mod checks;
pub mod config;
pub mod error;
pub mod report;

pub use check::{CheckResult, Metric, Status};
pub use checks::{check_ids, run_all, run_check, REGISTRY};
pub use config::{RunConfig, Tolerances};
pub use error::{Result, VerifyError};
pub use report::{Report, Summary};
