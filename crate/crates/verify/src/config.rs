//! Run configuration shared by every check.

use std::path::Path;

use qnk_core::tensor::gcd;
use qnk_core::C64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VerifyError};

/// The coprime pairs exercised by default.
pub const DEFAULT_PAIRS: [(usize, usize); 11] = [
    (2, 1),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 3),
    (5, 1),
    (5, 2),
    (5, 3),
    (5, 4),
    (6, 1),
    (6, 5),
];
pub const DEFAULT_SEED: u64 = 20240611;
pub const DEFAULT_TAU_SAMPLES: usize = 10;
/// Largest order any check supports.
pub const MAX_ORDER: usize = 6;

/// Thresholds applied to check metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative singular-value cutoff for numerical rank.
    pub rank: f64,
    /// Smallest accepted ratio across the rank cutoff.
    pub svd_gap: f64,
    /// Projector distance for subspace equality.
    pub subspace: f64,
    /// Relative residual for membership in a span.
    pub residual: f64,
    /// Relative error for pointwise identities.
    pub identity: f64,
    /// Defect of equivariance and quasi-periodicity relations.
    pub equivariance: f64,
    /// Relative agreement of continuations at two radii.
    pub continuation: f64,
    /// Distance of a winding number from the nearest integer.
    pub winding: f64,
    /// Error of a zero sum modulo the lattice.
    pub zero_sum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-8,
            svd_gap: 1e4,
            subspace: 1e-7,
            residual: 1e-8,
            identity: 1e-8,
            equivariance: 1e-9,
            continuation: 1e-8,
            winding: 1e-6,
            zero_sum: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Lattice modulus, written `[re, im]`.
    pub eta: C64,
    pub pairs: Vec<(usize, usize)>,
    pub tau_samples: usize,
    /// Worker threads for `run_all`; `0` lets the pool decide.
    #[serde(skip)]
    pub workers: usize,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            eta: C64::new(0.0, 1.0),
            pairs: DEFAULT_PAIRS.to_vec(),
            tau_samples: DEFAULT_TAU_SAMPLES,
            workers: 0,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    /// Load from a `.toml` or `.json` file; fields left out take defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| VerifyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => Ok(toml::from_str(&text)?),
            Some("json") => Ok(serde_json::from_str(&text)?),
            _ => Err(VerifyError::Config(format!(
                "{}: expected a .toml or .json file",
                path.display()
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta.im > 0.0) || !self.eta.re.is_finite() {
            return Err(VerifyError::Config(format!(
                "eta must lie in the upper half-plane, got {}",
                self.eta
            )));
        }
        if self.pairs.is_empty() {
            return Err(VerifyError::Config(
                "at least one (n, k) pair is required".into(),
            ));
        }
        for &(n, k) in &self.pairs {
            if !(2..=MAX_ORDER).contains(&n) || k == 0 || k >= n {
                return Err(VerifyError::Config(format!(
                    "pair ({n}, {k}) needs 1 <= k < n <= {MAX_ORDER}"
                )));
            }
            if gcd(n, k) != 1 {
                return Err(VerifyError::Config(format!(
                    "pair ({n}, {k}) is not coprime"
                )));
            }
        }
        let t = &self.tolerances;
        let positive = [
            t.rank,
            t.svd_gap,
            t.subspace,
            t.residual,
            t.identity,
            t.equivariance,
            t.continuation,
            t.winding,
            t.zero_sum,
        ];
        if positive.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(VerifyError::Config(
                "tolerances must be positive and finite".into(),
            ));
        }
        Ok(())
    }

    /// Distinct orders among the configured pairs, ascending.
    pub fn orders(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = self.pairs.iter().map(|&(n, _)| n).collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }
}
