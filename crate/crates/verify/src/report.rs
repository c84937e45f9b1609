//! The JSON report written by `report --out` and `verify --all --json`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::check::{CheckResult, Status};
use crate::config::RunConfig;
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub ambiguous: usize,
}

impl Summary {
    pub fn of(results: &[CheckResult]) -> Self {
        let count = |s| results.iter().filter(|r| r.status == s).count();
        Self {
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            ambiguous: count(Status::Ambiguous),
        }
    }

    /// Process exit code: `1` if any check failed. Ambiguous checks do not
    /// fail a run.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    /// RFC 3339 time of generation; excluded from the digest.
    pub generated_at: String,
    pub config: RunConfig,
    pub summary: Summary,
    /// SHA-256 over check ids, params, status and metrics.
    pub digest: String,
    pub results: Vec<CheckResult>,
}

/// The part of a result covered by the digest.
#[derive(Serialize)]
struct Hashed<'a> {
    check_id: &'a str,
    params: &'a crate::check::CheckParams,
    status: Status,
    metrics: &'a std::collections::BTreeMap<String, crate::check::Metric>,
}

impl Report {
    pub fn new(config: RunConfig, results: Vec<CheckResult>) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            summary: Summary::of(&results),
            digest: digest(&results)?,
            config,
            results,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Hex SHA-256 of the deterministic content of `results`.
pub fn digest(results: &[CheckResult]) -> Result<String> {
    let hashed: Vec<Hashed> = results
        .iter()
        .map(|r| Hashed {
            check_id: &r.check_id,
            params: &r.params,
            status: r.status,
            metrics: &r.metrics,
        })
        .collect();
    let bytes = serde_json::to_vec(&hashed)?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}
