//! Zero counting by the argument principle on a fundamental parallelogram.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::complex::{serde_cx, C64};
use crate::error::{Error, Result};
use crate::lattice;

/// Quadrature nodes per edge, grouped into Gauss-Legendre panels.
pub const DEFAULT_QUAD_POINTS: usize = 512;
/// Nodes per Gauss-Legendre panel.
pub const PANEL_ORDER: usize = 16;
pub const DEFAULT_MAX_QUAD_POINTS: usize = 8192;
pub const DEFAULT_REFINE_TOL: f64 = 1e-9;
pub const DEFAULT_BOUNDARY_FLOOR: f64 = 1e-6;
pub const DEFAULT_FD_STEP: f64 = 1e-5;
/// Largest distance of the winding number from an integer that is accepted.
pub const INTEGER_TOLERANCE: f64 = 0.01;

/// The parallelogram `base + s edge1 + t edge2`, `s, t in [0, 1]`, traversed
/// counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalParallelogram {
    #[serde(with = "serde_cx")]
    pub base: C64,
    #[serde(with = "serde_cx")]
    pub edge1: C64,
    #[serde(with = "serde_cx")]
    pub edge2: C64,
}

impl FundamentalParallelogram {
    pub fn new(base: C64, edge1: C64, edge2: C64) -> Result<Self> {
        if !((edge2 / edge1).im > 0.0) {
            return Err(Error::InvalidParams(
                "parallelogram edges must be positively oriented".into(),
            ));
        }
        Ok(Self { base, edge1, edge2 })
    }

    /// The cell spanned by `1` and `eta`.
    pub fn standard(base: C64, eta: C64) -> Result<Self> {
        Self::new(base, C64::new(1.0, 0.0), eta)
    }

    pub fn vertices(&self) -> [C64; 4] {
        let b = self.base;
        [
            b,
            b + self.edge1,
            b + self.edge1 + self.edge2,
            b + self.edge2,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourOptions {
    pub quad_points: usize,
    pub boundary_floor: f64,
    pub fd_step: f64,
    /// Cap on the node count reached by doubling.
    pub max_quad_points: usize,
    /// Accepted change of winding and zero sum between two passes.
    pub refine_tol: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self {
            quad_points: DEFAULT_QUAD_POINTS,
            boundary_floor: DEFAULT_BOUNDARY_FLOOR,
            fd_step: DEFAULT_FD_STEP,
            max_quad_points: DEFAULT_MAX_QUAD_POINTS,
            refine_tol: DEFAULT_REFINE_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub count: i64,
    /// `(1/2 pi i) \oint f'/f dz` before rounding.
    #[serde(with = "serde_cx")]
    pub winding: C64,
    /// `|winding - count|`.
    pub residual: f64,
    /// `(1/2 pi i) \oint z f'/f dz`, the sum of the enclosed zeros.
    #[serde(with = "serde_cx")]
    pub zero_sum: C64,
    /// Smallest `|f|` seen on the contour.
    pub min_modulus: f64,
    /// Nodes per edge used by the final pass.
    pub quad_points: usize,
}

impl ZeroCount {
    /// The zero sum reduced into the unit cell of the lattice spanned by the
    /// parallelogram's edges.
    pub fn reduced_sum(&self, p: &FundamentalParallelogram) -> C64 {
        lattice::reduce(self.zero_sum, p.edge1, p.edge2)
    }
}

/// Four-point central difference along the real direction.
pub fn stencil_derivative<F>(f: &F, z: C64, h: f64) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    let fm2 = f(z - 2.0 * h)?;
    let fm1 = f(z - h)?;
    let fp1 = f(z + h)?;
    let fp2 = f(z + 2.0 * h)?;
    Ok((fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h))
}

/// Count zeros of `f` inside `p` using a finite-difference derivative.
pub fn count_zeros<F>(
    f: F,
    p: &FundamentalParallelogram,
    opts: &ContourOptions,
) -> Result<ZeroCount>
where
    F: Fn(C64) -> Result<C64>,
{
    let h = opts.fd_step;
    count_zeros_with(&f, |z| stencil_derivative(&f, z, h), p, opts)
}

struct ContourSums {
    log: C64,
    z_log: C64,
    min_modulus: f64,
}

/// Composite Gauss-Legendre sums of `f'/f` and `z f'/f` with `points` nodes
/// per edge. Panel endpoints are checked against the boundary floor too.
fn contour_sums<F, D>(
    f: &F,
    df: &D,
    p: &FundamentalParallelogram,
    points: usize,
    floor: f64,
) -> Result<ContourSums>
where
    F: Fn(C64) -> Result<C64>,
    D: Fn(C64) -> Result<C64>,
{
    let order = PANEL_ORDER.min(points);
    let panels = points.div_ceil(order);
    let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order >= 2"));
    let v = p.vertices();
    let mut sums = ContourSums {
        log: C64::new(0.0, 0.0),
        z_log: C64::new(0.0, 0.0),
        min_modulus: f64::INFINITY,
    };
    let mut guard = |fz: C64| {
        let modulus = fz.norm();
        sums.min_modulus = sums.min_modulus.min(modulus);
        if modulus < floor {
            Err(Error::ZeroOnBoundary { modulus, floor })
        } else {
            Ok(fz)
        }
    };
    let mut log = C64::new(0.0, 0.0);
    let mut z_log = C64::new(0.0, 0.0);
    for k in 0..4 {
        let (a, b) = (v[k], v[(k + 1) % 4]);
        let panel = (b - a) / panels as f64;
        for m in 0..panels {
            let start = a + panel * m as f64;
            guard(f(start)?)?;
            let mid = start + panel * 0.5;
            for &(x, w) in rule.as_node_weight_pairs() {
                let z = mid + panel * (0.5 * x);
                let fz = guard(f(z)?)?;
                let g = df(z)? / fz * panel * (0.5 * w);
                log += g;
                z_log += g * z;
            }
        }
    }
    sums.log = log;
    sums.z_log = z_log;
    Ok(sums)
}

/// Count zeros of `f` inside `p` given its derivative `df`.
///
/// The node count starts at `opts.quad_points` and doubles until the winding
/// number and the zero sum change by less than `opts.refine_tol`, or until
/// `opts.max_quad_points` is reached. Zeros close to the contour need the
/// extra resolution.
pub fn count_zeros_with<F, D>(
    f: F,
    df: D,
    p: &FundamentalParallelogram,
    opts: &ContourOptions,
) -> Result<ZeroCount>
where
    F: Fn(C64) -> Result<C64>,
    D: Fn(C64) -> Result<C64>,
{
    if opts.quad_points < 2 {
        return Err(Error::InvalidParams(
            "need at least two quadrature points".into(),
        ));
    }
    let mut points = opts.quad_points;
    let mut sums = contour_sums(&f, &df, p, points, opts.boundary_floor)?;
    while points < opts.max_quad_points {
        let finer = contour_sums(&f, &df, p, 2 * points, opts.boundary_floor)?;
        points *= 2;
        let change = (finer.log - sums.log)
            .norm()
            .max((finer.z_log - sums.z_log).norm());
        sums = finer;
        if change < opts.refine_tol * 2.0 * std::f64::consts::PI {
            break;
        }
    }
    let ContourSums {
        log: int_log,
        z_log: int_z_log,
        min_modulus,
    } = sums;
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let winding = int_log / two_pi_i;
    let count = winding.re.round();
    let residual = (winding - count).norm();
    if residual > INTEGER_TOLERANCE {
        return Err(Error::NonInteger {
            value: winding.re,
            residual,
        });
    }
    Ok(ZeroCount {
        count: count as i64,
        winding,
        residual,
        zero_sum: int_z_log / two_pi_i,
        min_modulus,
        quad_points: points,
    })
}

/// Quasi-periodicity data `f(z + eta1) = e^{-2 pi i (a z + b)} f(z)`,
/// `f(z + eta2) = e^{-2 pi i (c z + d)} f(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiPeriodicity {
    pub eta1: C64,
    pub eta2: C64,
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl QuasiPeriodicity {
    /// Data for the members of `Theta_n` with periods `1` and `eta`.
    pub fn theta_n(n: usize, eta: C64) -> Self {
        let zero = C64::new(0.0, 0.0);
        Self {
            eta1: C64::new(1.0, 0.0),
            eta2: eta,
            a: zero,
            b: zero,
            c: C64::new(n as f64, 0.0),
            d: C64::new(-0.5, 0.0),
        }
    }

    /// Number of zeros in a fundamental domain.
    pub fn zero_count(&self) -> C64 {
        self.c * self.eta1 - self.a * self.eta2
    }

    /// Sum of zeros in a fundamental domain, modulo the period lattice.
    pub fn zero_sum(&self) -> C64 {
        let (e1, e2) = (self.eta1, self.eta2);
        0.5 * (self.c * e1 * e1 - self.a * e2 * e2) + (self.c - self.a) * e1 * e2 + self.b * e2
            - self.d * e1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::c;

    #[test]
    fn polynomial_zeros() {
        // (z - 0.3)(z - 0.5 - 0.2i) inside the unit square based at -0.1-0.1i.
        let f = |z: C64| Ok((z - 0.3) * (z - c(0.5, 0.2)));
        let df = |z: C64| Ok(2.0 * z - 0.3 - c(0.5, 0.2));
        let p = FundamentalParallelogram::standard(c(-0.1, -0.1), c(0.0, 1.0)).unwrap();
        let r = count_zeros_with(f, df, &p, &ContourOptions::default()).unwrap();
        assert_eq!(r.count, 2);
        assert!((r.zero_sum - c(0.8, 0.2)).norm() < 1e-6);
        let fd = count_zeros(f, &p, &ContourOptions::default()).unwrap();
        assert_eq!(fd.count, 2);
    }

    #[test]
    fn boundary_zero_detected() {
        let f = |z: C64| Ok(z - c(0.5, 0.0));
        let p = FundamentalParallelogram::standard(c(0.0, 0.0), c(0.0, 1.0)).unwrap();
        let r = count_zeros(f, &p, &ContourOptions::default());
        assert!(matches!(r, Err(Error::ZeroOnBoundary { .. })));
    }

    #[test]
    fn orientation_checked() {
        assert!(FundamentalParallelogram::new(c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn predicted_count_for_theta_n() {
        let q = QuasiPeriodicity::theta_n(5, c(0.2, 1.3));
        assert!((q.zero_count() - 5.0).norm() < 1e-14);
        let s = lattice::reduce(q.zero_sum(), c(1.0, 0.0), c(0.2, 1.3));
        assert!((s - c(0.0, 0.0)).norm() < 1e-12);
    }
}
