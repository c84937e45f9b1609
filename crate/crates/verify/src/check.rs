//! Results of a single verification check.

use std::collections::BTreeMap;

use qnk_core::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing was sampled, so the check holds vacuously.
    Ambiguous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
}

/// A named real with an optional acceptance threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Bound>,
}

impl Metric {
    pub fn within(&self) -> bool {
        match (self.threshold, self.bound) {
            (Some(t), Some(Bound::AtMost)) => self.value <= t,
            (Some(t), Some(Bound::AtLeast)) => self.value >= t,
            _ => true,
        }
    }
}

/// The parameters a check ran with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub seed: u64,
    pub eta: C64,
    pub pairs: Vec<(usize, usize)>,
    pub tau_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: CheckParams,
    pub status: Status,
    pub metrics: BTreeMap<String, Metric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub runtime_ms: u64,
}

/// Metrics collected while a check runs.
#[derive(Debug, Default, Clone)]
pub struct Metrics {
    map: BTreeMap<String, Metric>,
    samples: usize,
}

impl Metrics {
    /// Keep the largest value seen under `name`, required to stay `<= threshold`.
    pub fn at_most(&mut self, name: &str, value: f64, threshold: f64) {
        self.fold(name, value, threshold, Bound::AtMost, f64::max);
    }

    /// Keep the smallest value seen under `name`, required to stay `>= threshold`.
    pub fn at_least(&mut self, name: &str, value: f64, threshold: f64) {
        self.fold(name, value, threshold, Bound::AtLeast, f64::min);
    }

    /// Add `value` to a counter that must stay at zero.
    pub fn count(&mut self, name: &str, value: usize) {
        let m = self.map.entry(name.to_string()).or_insert(Metric {
            value: 0.0,
            threshold: Some(0.0),
            bound: Some(Bound::AtMost),
        });
        m.value += value as f64;
    }

    /// Record an informational value with no threshold.
    pub fn observe(&mut self, name: &str, value: f64) {
        self.map.insert(
            name.to_string(),
            Metric {
                value,
                threshold: None,
                bound: None,
            },
        );
    }

    /// Note that one parameter sample was evaluated.
    pub fn sampled(&mut self) {
        self.samples += 1;
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn into_map(self) -> BTreeMap<String, Metric> {
        self.map
    }

    fn fold(
        &mut self,
        name: &str,
        value: f64,
        threshold: f64,
        bound: Bound,
        pick: fn(f64, f64) -> f64,
    ) {
        let value = finite(value, bound);
        self.map
            .entry(name.to_string())
            .and_modify(|m| m.value = pick(m.value, value))
            .or_insert(Metric {
                value,
                threshold: Some(threshold),
                bound: Some(bound),
            });
    }
}

/// JSON has no infinities; clamp them, and map NaN to the failing side.
fn finite(value: f64, bound: Bound) -> f64 {
    if value.is_nan() {
        match bound {
            Bound::AtMost => f64::MAX,
            Bound::AtLeast => f64::MIN,
        }
    } else {
        value.clamp(f64::MIN, f64::MAX)
    }
}

/// Status implied by a set of metrics: pass iff every threshold holds.
pub fn status_of(metrics: &BTreeMap<String, Metric>) -> Status {
    if metrics.values().all(Metric::within) {
        Status::Pass
    } else {
        Status::Fail
    }
}
