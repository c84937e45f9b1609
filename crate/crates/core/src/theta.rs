//! Theta functions for the lattice `Lambda = Z + Z eta`.
//!
//! The basic function is
//! `theta(z) = sum_m (-1)^m e(m z + m(m-1) eta / 2)`,
//! which has simple zeros exactly on `Lambda`. The order-`n` basis
//! `theta_alpha` spans the space `Theta_n(Lambda)` of entire functions with
//! `f(z + 1) = f(z)` and `f(z + eta) = -e(-n z) f(z)`.

use serde::{Deserialize, Serialize};

use crate::complex::{e, e_real, serde_cx, C64};
use crate::error::{Error, Result};
use crate::lattice;

/// Largest `|m|` the series is allowed to reach.
pub const MAX_TERMS: usize = 200;
pub const DEFAULT_TRUNC_EPS: f64 = 1e-12;

/// Lattice parameter, theta order and truncation tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeData {
    #[serde(with = "serde_cx")]
    eta: C64,
    n: usize,
    trunc_eps: f64,
}

impl LatticeData {
    pub fn new(eta: C64, n: usize, trunc_eps: f64) -> Result<Self> {
        if !(eta.im > 0.0) || !eta.re.is_finite() || !eta.im.is_finite() {
            return Err(Error::InvalidLattice(format!(
                "Im eta must be positive, got {eta}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidLattice("order n must be at least 1".into()));
        }
        if !(trunc_eps > 0.0) || !trunc_eps.is_finite() {
            return Err(Error::InvalidLattice(format!(
                "bad truncation tolerance {trunc_eps}"
            )));
        }
        Ok(Self { eta, n, trunc_eps })
    }

    pub fn with_order(eta: C64, n: usize) -> Result<Self> {
        Self::new(eta, n, DEFAULT_TRUNC_EPS)
    }

    pub fn eta(&self) -> C64 {
        self.eta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc_eps(&self) -> f64 {
        self.trunc_eps
    }

    /// Same lattice, different theta order.
    pub fn reorder(&self, n: usize) -> Result<Self> {
        Self::new(self.eta, n, self.trunc_eps)
    }

    /// Distance from `z` to the lattice `(1/m) Lambda`.
    pub fn distance_to_fraction(&self, z: C64, m: usize) -> f64 {
        lattice::distance_to_fraction(z, C64::new(1.0, 0.0), self.eta, m)
    }

    /// Representative of `z` modulo `Lambda` in the half-open unit cell.
    pub fn reduce(&self, z: C64) -> C64 {
        lattice::reduce(z, C64::new(1.0, 0.0), self.eta)
    }

    /// `z = a + b eta`.
    pub fn point(&self, a: f64, b: f64) -> C64 {
        C64::new(a, 0.0) + self.eta * b
    }
}

/// A theta value together with a bound on the neglected part of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaValue {
    #[serde(with = "serde_cx")]
    pub value: C64,
    pub tail_bound: f64,
}

fn series_term(m: i64, z: C64, eta: C64) -> C64 {
    let mf = m as f64;
    let t = e(z * mf + eta * (mf * (mf - 1.0) * 0.5));
    if m % 2 == 0 {
        t
    } else {
        -t
    }
}

/// Geometric bound on `sum_{|m| > big_n} |a_m|`; infinite while the terms
/// have not started decaying.
fn tail_after(big_n: usize, y: f64, t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let nn = big_n as f64;
    // |a_m| = exp(-2 pi (m y + m(m-1) t / 2))
    let mag = |m: f64| (-two_pi * (m * y + m * (m - 1.0) * 0.5 * t)).exp();
    let pos_rate = y + (nn + 1.0) * t;
    let neg_rate = -y + (nn + 2.0) * t;
    if pos_rate <= 0.0 || neg_rate <= 0.0 {
        return f64::INFINITY;
    }
    let pos = mag(nn + 1.0) / (1.0 - (-two_pi * pos_rate).exp());
    let neg = mag(-nn - 1.0) / (1.0 - (-two_pi * neg_rate).exp());
    pos + neg
}

/// Sum the series until the tail bound drops below `eps`.
pub fn theta_series(z: C64, eta: C64, eps: f64) -> Result<ThetaValue> {
    let (y, t) = (z.im, eta.im);
    let mut sum = series_term(0, z, eta);
    for big_n in 1..=MAX_TERMS {
        let m = big_n as i64;
        sum += series_term(m, z, eta) + series_term(-m, z, eta);
        let tail = tail_after(big_n, y, t);
        if tail < eps {
            return Ok(ThetaValue {
                value: sum,
                tail_bound: tail,
            });
        }
    }
    Err(Error::NonConvergent {
        eps,
        cap: MAX_TERMS,
    })
}

/// `theta(z)` at the lattice tolerance.
pub fn theta_basic(z: C64, lat: &LatticeData) -> Result<ThetaValue> {
    theta_series(z, lat.eta, lat.trunc_eps)
}

/// Shorthand for the value of [`theta_basic`].
pub fn theta(z: C64, lat: &LatticeData) -> Result<C64> {
    Ok(theta_basic(z, lat)?.value)
}

/// `theta_alpha(z) = e(alpha z + alpha/2n + alpha(alpha-n) eta / 2n)
///                   * prod_{m<n} theta(z + m/n + alpha eta / n)`.
///
/// `alpha` is used as given, not reduced mod `n`; periodicity in `alpha` is a
/// property of the result.
pub fn theta_alpha(alpha: i64, z: C64, lat: &LatticeData) -> Result<ThetaValue> {
    let n = lat.n as f64;
    let a = alpha as f64;
    let eta = lat.eta;
    let pref = e(z * a + a / (2.0 * n) + eta * (a * (a - n) / (2.0 * n)));
    let shift = eta * (a / n);
    let mut eps = lat.trunc_eps;
    for _ in 0..12 {
        let mut prod = pref;
        let mut upper = pref.norm();
        let mut exact = pref.norm();
        for m in 0..lat.n {
            let v = theta_series(z + m as f64 / n + shift, eta, eps)?;
            prod *= v.value;
            upper *= v.value.norm() + v.tail_bound;
            exact *= v.value.norm();
        }
        let bound = upper - exact;
        if bound < lat.trunc_eps {
            return Ok(ThetaValue {
                value: prod,
                tail_bound: bound,
            });
        }
        if eps < 1e-290 {
            break;
        }
        eps = (eps * 0.1 * lat.trunc_eps / bound).max(1e-300);
    }
    Err(Error::NonConvergent {
        eps: lat.trunc_eps,
        cap: MAX_TERMS,
    })
}

/// `theta_{alpha,c}(z) = theta_alpha(z - c/n + (n-1)/2n)`.
pub fn theta_alpha_c(alpha: i64, c: C64, z: C64, lat: &LatticeData) -> Result<ThetaValue> {
    let n = lat.n as f64;
    theta_alpha(alpha, z - c / n + (n - 1.0) / (2.0 * n), lat)
}

/// `psi_alpha = e(-alpha(n+1)/2n) theta_alpha`, only for odd `n`.
pub fn psi_alpha(alpha: i64, z: C64, lat: &LatticeData) -> Result<ThetaValue> {
    if lat.n.is_multiple_of(2) {
        return Err(Error::EvenOrder { n: lat.n });
    }
    let n = lat.n as f64;
    let f = e_real(-(alpha as f64) * (n + 1.0) / (2.0 * n));
    let t = theta_alpha(alpha, z, lat)?;
    Ok(ThetaValue {
        value: f * t.value,
        tail_bound: t.tail_bound,
    })
}

/// `(theta_0(z), ..., theta_{n-1}(z))`, the coordinates of the embedding
/// `E -> P^{n-1}`.
pub fn embedding(z: C64, lat: &LatticeData) -> Result<Vec<C64>> {
    (0..lat.n as i64)
        .map(|a| Ok(theta_alpha(a, z, lat)?.value))
        .collect()
}

/// The same family with a shifted centre.
pub fn embedding_c(c: C64, z: C64, lat: &LatticeData) -> Result<Vec<C64>> {
    (0..lat.n as i64)
        .map(|a| Ok(theta_alpha_c(a, c, z, lat)?.value))
        .collect()
}

/// Action of the Heisenberg generator `S`: `(S f)(z) = f(z + 1/n)`.
pub fn act_s<F>(f: F, z: C64, lat: &LatticeData) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    f(z + 1.0 / lat.n as f64)
}

/// Action of `T`: `(T f)(z) = e(z + 1/2n - (n-1) eta / 2n) f(z + eta/n)`.
pub fn act_t<F>(f: F, z: C64, lat: &LatticeData) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    let n = lat.n as f64;
    let factor = e(z + 1.0 / (2.0 * n) - lat.eta * ((n - 1.0) / (2.0 * n)));
    Ok(factor * f(z + lat.eta / n)?)
}

/// Defects `(|f(z+1) - f(z)|, |f(z+eta) + e(-n z) f(z)|)` measuring
/// membership in `Theta_n`.
pub fn quasi_periodicity_defect<F>(f: F, z: C64, lat: &LatticeData) -> Result<(f64, f64)>
where
    F: Fn(C64) -> Result<C64>,
{
    let fz = f(z)?;
    let d1 = (f(z + 1.0)? - fz).norm();
    let d2 = (f(z + lat.eta)? + e(-z * lat.n as f64) * fz).norm();
    Ok((d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::c;

    fn lat(n: usize) -> LatticeData {
        LatticeData::with_order(c(0.1, 1.0), n).unwrap()
    }

    #[test]
    fn rejects_bad_lattice() {
        assert!(LatticeData::with_order(c(0.3, -1.0), 2).is_err());
        assert!(LatticeData::with_order(c(0.0, 1.0), 0).is_err());
        assert!(LatticeData::new(c(0.0, 1.0), 2, 0.0).is_err());
    }

    #[test]
    fn theta_vanishes_on_lattice() {
        let l = lat(1);
        for z in [c(0.0, 0.0), c(1.0, 0.0), l.eta(), l.eta() * 2.0 - 3.0] {
            assert!(theta(z, &l).unwrap().norm() < 1e-11, "z = {z}");
        }
    }

    #[test]
    fn tail_bound_respected() {
        let l = lat(1);
        let v = theta_basic(c(0.3, 0.2), &l).unwrap();
        assert!(v.tail_bound < 1e-12);
    }

    #[test]
    fn tiny_imaginary_part_does_not_converge() {
        let l = LatticeData::with_order(c(0.0, 1e-4), 1).unwrap();
        assert!(matches!(
            theta_basic(c(0.1, 0.0), &l),
            Err(Error::NonConvergent { .. })
        ));
    }

    #[test]
    fn alpha_periodic_in_index() {
        let l = lat(3);
        let z = c(0.21, 0.13);
        for a in 0..3 {
            let x = theta_alpha(a, z, &l).unwrap().value;
            let y = theta_alpha(a + 3, z, &l).unwrap().value;
            let w = theta_alpha(a - 3, z, &l).unwrap().value;
            assert!((x - y).norm() < 1e-10 * x.norm().max(1.0));
            assert!((x - w).norm() < 1e-10 * x.norm().max(1.0));
        }
    }

    #[test]
    fn psi_requires_odd_order() {
        assert!(matches!(
            psi_alpha(0, c(0.1, 0.1), &lat(4)),
            Err(Error::EvenOrder { n: 4 })
        ));
        assert!(psi_alpha(0, c(0.1, 0.1), &lat(5)).is_ok());
    }

    #[test]
    fn heisenberg_actions_on_basis() {
        let l = lat(4);
        let z = c(0.17, 0.09);
        let n = 4.0;
        for a in 0..4i64 {
            let f = |w| Ok(theta_alpha(a, w, &l)?.value);
            let s = act_s(f, z, &l).unwrap();
            let expect = e_real(a as f64 / n) * f(z).unwrap();
            assert!((s - expect).norm() < 1e-10);
            let t = act_t(f, z, &l).unwrap();
            let next = theta_alpha(a + 1, z, &l).unwrap().value;
            assert!((t - next).norm() < 1e-10);
        }
    }

    #[test]
    fn shifted_basis_at_centre_is_standard() {
        let l = lat(5);
        let z = c(-0.3, 0.4);
        let centre = c(2.0, 0.0);
        for a in 0..5 {
            let x = theta_alpha_c(a, centre, z, &l).unwrap().value;
            let y = theta_alpha(a, z, &l).unwrap().value;
            assert!((x - y).norm() < 1e-11);
        }
    }
}
