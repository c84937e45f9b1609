use serde::{Deserialize, Serialize};

use crate::complex::{serde_cx, C64};
use crate::error::{Error, Result};
use crate::theta::LatticeData;

/// Distance to `(1/n) Lambda` below which `tau` is treated as a torsion point.
pub const TORSION_TOL: f64 = 1e-9;

/// `i mod n` in `0..n`.
#[inline]
pub fn md(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `k` modulo `n`, if it exists.
pub fn mod_inverse(k: usize, n: usize) -> Option<usize> {
    if n == 1 {
        return Some(0);
    }
    (1..n).find(|&x| (k * x) % n == 1)
}

/// The data `(n, k, k', tau)` of one algebra together with its lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraParams {
    n: usize,
    k: usize,
    k_prime: usize,
    #[serde(with = "serde_cx")]
    tau: C64,
    lat: LatticeData,
}

impl AlgebraParams {
    pub fn new(n: usize, k: usize, tau: C64, eta: C64) -> Result<Self> {
        Self::with_lattice(n, k, tau, LatticeData::with_order(eta, n)?)
    }

    /// Uses the modulus and truncation policy of `lat`, re-targeted to order
    /// `n`.
    pub fn with_lattice(n: usize, k: usize, tau: C64, lat: LatticeData) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidParams(format!(
                "k must satisfy 1 <= k < n, got k = {k}"
            )));
        }
        if gcd(n, k) != 1 {
            return Err(Error::InvalidParams(format!("gcd({n}, {k}) != 1")));
        }
        if !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::InvalidParams("tau must be finite".into()));
        }
        let k_prime = mod_inverse(k, n).expect("coprime");
        let lat = if lat.n() == n { lat } else { lat.reorder(n)? };
        Ok(Self {
            n,
            k,
            k_prime,
            tau,
            lat,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn eta(&self) -> C64 {
        self.lat.eta()
    }

    pub fn lat(&self) -> &LatticeData {
        &self.lat
    }

    pub fn with_tau(&self, tau: C64) -> Self {
        Self { tau, ..*self }
    }

    /// Same `n` and `tau`, different `k`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::with_lattice(self.n, k, self.tau, self.lat)
    }

    /// Distance from `tau` to `(1/n) Lambda`.
    pub fn torsion_distance(&self) -> f64 {
        self.lat.distance_to_fraction(self.tau, self.n)
    }

    pub fn is_torsion(&self) -> bool {
        self.torsion_distance() < TORSION_TOL
    }

    pub fn require_generic(&self) -> Result<()> {
        let distance = self.torsion_distance();
        if distance < TORSION_TOL {
            Err(Error::TorsionPoint { distance })
        } else {
            Ok(())
        }
    }
}
