//! Relation vectors and the operator `R_tau(z)`.

use crate::complex::{e_real, C64};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::sampling::GenericTauSampler;
use crate::theta::{embedding, psi_alpha};

use super::params::{md, AlgebraParams};
use super::vector::TensorVector;

/// Radius of the circle used to continue `R_tau(tau)` to torsion points.
pub const CONTINUATION_RADIUS: f64 = 1e-3;
pub const CONTINUATION_POINTS: usize = 8;

/// Relative size of a continued column, compared with its values on the
/// circle, below which it is treated as vanishing at the centre.
pub const VANISHING_COLUMN: f64 = 1e-6;

/// Taylor extraction of limit lines uses a larger circle so that the
/// low-order coefficients are well above rounding level.
const TAYLOR_RADIUS: f64 = 1e-2;
const TAYLOR_POINTS: usize = 16;

/// Columns whose norm is below this fraction of the largest column norm are
/// treated as zero.
const ZERO_COLUMN: f64 = 1e-10;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// `r_ij = sum_r theta_{j-i+(k-1)r}(0) / (theta_{j-i-r}(-tau) theta_{kr}(tau))
///          x_{j-r} ⊗ x_{i+r}`.
pub fn relation_r_ij(p: &AlgebraParams, i: usize, j: usize) -> Result<TensorVector> {
    p.require_generic()?;
    let (n, k) = (p.n(), p.k() as i64);
    let tau = p.tau();
    let th0 = embedding(zero(), p.lat())?;
    let tht = embedding(tau, p.lat())?;
    let thm = embedding(-tau, p.lat())?;
    let (i, j) = (i as i64, j as i64);
    let mut v = TensorVector::zeros(n, 2);
    for r in 0..n as i64 {
        let num = th0[md(j - i + (k - 1) * r, n)];
        let den = thm[md(j - i - r, n)] * tht[md(k * r, n)];
        v.add2(md(j - r, n), md(i + r, n), num / den);
    }
    Ok(v)
}

/// The operator `R_tau(z)` on `V ⊗ V`; column `i n + j` is the image of
/// `x_i ⊗ x_j`.
///
/// The normalising product `prod_alpha theta_alpha(-z)` is combined with the
/// denominator `theta_{j-i-r}(-z)` before evaluation, which keeps the matrix
/// finite at `z in (1/n) Lambda`.
pub fn operator_r(p: &AlgebraParams, z: C64) -> Result<CMat> {
    p.require_generic()?;
    let (n, k) = (p.n(), p.k() as i64);
    let lat = p.lat();
    let th_mz = embedding(-z, lat)?;
    let th_tz = embedding(p.tau() - z, lat)?;
    let th_t = embedding(p.tau(), lat)?;
    let th_0 = embedding(zero(), lat)?;
    let norm: C64 = th_0[1..].iter().product();
    // excl[m] = prod_{alpha != m} theta_alpha(-z)
    let excl: Vec<C64> = (0..n)
        .map(|m| {
            th_mz
                .iter()
                .enumerate()
                .filter(|&(a, _)| a != m)
                .map(|(_, v)| *v)
                .product()
        })
        .collect();
    let mut out = CMat::zeros(n * n, n * n);
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            let col = md(i, n) * n + md(j, n);
            for r in 0..n as i64 {
                let row = md(j - r, n) * n + md(i + r, n);
                let val = excl[md(j - i - r, n)] / norm * th_tz[md(j - i + r * (k - 1), n)]
                    / th_t[md(k * r, n)];
                out[(row, col)] = val;
            }
        }
    }
    Ok(out)
}

/// `R_tau(tau)`, continued holomorphically to `tau in (1/n) Lambda`.
pub fn operator_r_diag(p: &AlgebraParams) -> Result<CMat> {
    if p.is_torsion() {
        operator_r_diag_continued(p, CONTINUATION_RADIUS, CONTINUATION_POINTS)
    } else {
        operator_r(p, p.tau())
    }
}

/// Mean of `R_t(t)` over `t = tau + radius e(m/points)`. For a holomorphic
/// matrix function this reproduces the centre value up to `O(radius^points)`.
///
/// A column whose mean is below [`VANISHING_COLUMN`] times its size on the
/// circle vanishes at the centre; only aliasing residue would remain, so it
/// is set to zero.
pub fn operator_r_diag_continued(p: &AlgebraParams, radius: f64, points: usize) -> Result<CMat> {
    let n2 = p.n() * p.n();
    let mut acc = CMat::zeros(n2, n2);
    let mut circle = vec![0.0f64; n2];
    for m in 0..points {
        let t = p.tau() + e_real(m as f64 / points as f64) * radius;
        let sample = operator_r(&p.with_tau(t), t)?;
        for (c, size) in circle.iter_mut().enumerate() {
            *size = size.max(sample.column(c).norm());
        }
        acc += sample;
    }
    acc /= C64::new(points as f64, 0.0);
    for (c, size) in circle.iter().enumerate() {
        if acc.column(c).norm() < VANISHING_COLUMN * size {
            acc.column_mut(c).fill(zero());
        }
    }
    Ok(acc)
}

/// The line `L_ij(tau)` spanned by `r_ij`, continued to torsion points; a
/// representative vector, or `None` when the column vanishes identically.
///
/// At a torsion point the column of `R_t(t)` is expanded around `tau` and
/// its first non-negligible Taylor coefficient is returned.
pub fn line_limit(p: &AlgebraParams, i: usize, j: usize) -> Result<Option<TensorVector>> {
    let n = p.n();
    let col = i * n + j;
    if !p.is_torsion() {
        let m = operator_r(p, p.tau())?;
        let scale = max_column_norm(&m);
        let v = column(&m, col, n);
        return Ok((v.norm() > ZERO_COLUMN * scale).then_some(v));
    }
    let samples: Vec<(C64, CMat)> = (0..TAYLOR_POINTS)
        .map(|l| {
            let w = e_real(l as f64 / TAYLOR_POINTS as f64);
            let t = p.tau() + w * TAYLOR_RADIUS;
            Ok((w, operator_r(&p.with_tau(t), t)?))
        })
        .collect::<Result<_>>()?;
    let global = samples
        .iter()
        .map(|(_, m)| max_column_norm(m))
        .fold(0.0, f64::max);
    let local = samples
        .iter()
        .map(|(_, m)| column(m, col, n).norm())
        .fold(0.0, f64::max);
    if local <= ZERO_COLUMN * global {
        return Ok(None);
    }
    for order in 0..TAYLOR_POINTS / 2 {
        let mut acc = vec![zero(); n * n];
        for (w, m) in &samples {
            let wp = w.powi(-(order as i32));
            for (r, a) in acc.iter_mut().enumerate() {
                *a += m[(r, col)] * wp;
            }
        }
        let v =
            TensorVector::from_coeffs(n, 2, acc)?.scale(C64::new(1.0 / TAYLOR_POINTS as f64, 0.0));
        if v.norm() > 1e-6 * local {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub(crate) fn column(m: &CMat, col: usize, n: usize) -> TensorVector {
    TensorVector::from_coeffs(n, 2, m.column(col).iter().copied().collect()).expect("n^2 rows")
}

pub(crate) fn max_column_norm(m: &CMat) -> f64 {
    (0..m.ncols())
        .map(|c| m.column(c).norm())
        .fold(0.0, f64::max)
}

/// `sum_{r=1}^{ceil(n/2)-1} theta_{(k-1)r}(0) / (theta_{-r}(0) theta_{kr}(0))
///  [x_{i-r}, x_{i+r}]`, the predicted line `L_ii(0)`.
pub fn tau_zero_combination(p: &AlgebraParams, i: usize) -> Result<TensorVector> {
    let (n, k) = (p.n(), p.k() as i64);
    let th0 = embedding(zero(), p.lat())?;
    let mut v = TensorVector::zeros(n, 2);
    let upper = n.div_ceil(2) as i64 - 1;
    let i = i as i64;
    for r in 1..=upper {
        let c = th0[md((k - 1) * r, n)] / (th0[md(-r, n)] * th0[md(k * r, n)]);
        let (a, b) = (md(i - r, n), md(i + r, n));
        v.add2(a, b, c);
        v.add2(b, a, -c);
    }
    Ok(v)
}

/// The families `R_ij` and `R'_ij`, each indexed by `i n + j`.
#[derive(Debug, Clone)]
pub struct AltRelations {
    pub r: Vec<TensorVector>,
    pub r_prime: Vec<TensorVector>,
}

/// `R_ij  = sum_r e(r/n) theta_{-(k+1)i+(k-1)r}(0) /
///          (theta_{r+i}(tau) theta_{k(r-i)}(tau)) x_{j-r} x_{j+r}` and
/// `R'_ij = sum_r e(r/n) theta_{k-(k+1)i+(k-1)r}(0) /
///          (theta_{r+i}(tau) theta_{k(r-i+1)}(tau)) x_{j-r} x_{j+r+1}`.
pub fn alt_relations(p: &AlgebraParams) -> Result<AltRelations> {
    p.require_generic()?;
    let (n, k) = (p.n(), p.k() as i64);
    let th0 = embedding(zero(), p.lat())?;
    let tht = embedding(p.tau(), p.lat())?;
    let nf = n as f64;
    let mut r_all = Vec::with_capacity(n * n);
    let mut rp_all = Vec::with_capacity(n * n);
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            let mut r = TensorVector::zeros(n, 2);
            let mut rp = TensorVector::zeros(n, 2);
            for s in 0..n as i64 {
                let w = e_real(s as f64 / nf);
                let c = w * th0[md(-(k + 1) * i + (k - 1) * s, n)]
                    / (tht[md(s + i, n)] * tht[md(k * (s - i), n)]);
                r.add2(md(j - s, n), md(j + s, n), c);
                let cp = w * th0[md(k - (k + 1) * i + (k - 1) * s, n)]
                    / (tht[md(s + i, n)] * tht[md(k * (s - i + 1), n)]);
                rp.add2(md(j - s, n), md(j + s + 1, n), cp);
            }
            r_all.push(r);
            rp_all.push(rp);
        }
    }
    Ok(AltRelations {
        r: r_all,
        r_prime: rp_all,
    })
}

fn odd_k1_check(p: &AlgebraParams, j: usize) -> Result<()> {
    if p.n().is_multiple_of(2) {
        return Err(Error::EvenOrder { n: p.n() });
    }
    if p.k() != 1 {
        return Err(Error::InvalidParams(
            "odd-order variants are defined for k = 1".into(),
        ));
    }
    if j.is_multiple_of(p.n()) {
        return Err(Error::InvalidParams(
            "variant index j must be non-zero mod n".into(),
        ));
    }
    p.require_generic()
}

fn odd_variant(
    p: &AlgebraParams,
    i: usize,
    j: usize,
    weight: impl Fn(i64) -> C64,
    basis: &[C64],
) -> TensorVector {
    let n = p.n();
    let (i, j) = (i as i64, j as i64);
    let mut v = TensorVector::zeros(n, 2);
    for s in 0..n as i64 {
        let c = weight(s) / (basis[md(s + j, n)] * basis[md(s - j, n)]);
        v.add2(md(i - s, n), md(i + s, n), c);
    }
    v
}

/// `sum_s x_{i-s} x_{i+s} / (theta_{s+j}(tau) theta_{s-j}(tau))` for odd `n`,
/// `k = 1`, `j != 0`.
pub fn odd_variant_plain(p: &AlgebraParams, i: usize, j: usize) -> Result<TensorVector> {
    odd_k1_check(p, j)?;
    let tht = embedding(p.tau(), p.lat())?;
    Ok(odd_variant(p, i, j, |_| C64::new(1.0, 0.0), &tht))
}

/// The same sum weighted by `w^s`, `w = e(1/n)`.
pub fn odd_variant_twisted(p: &AlgebraParams, i: usize, j: usize) -> Result<TensorVector> {
    odd_k1_check(p, j)?;
    let tht = embedding(p.tau(), p.lat())?;
    let nf = p.n() as f64;
    Ok(odd_variant(p, i, j, |s| e_real(s as f64 / nf), &tht))
}

/// The unweighted sum with `theta` replaced by `psi`.
pub fn odd_variant_psi(p: &AlgebraParams, i: usize, j: usize) -> Result<TensorVector> {
    odd_k1_check(p, j)?;
    let psi: Vec<C64> = (0..p.n() as i64)
        .map(|a| Ok(psi_alpha(a, p.tau(), p.lat())?.value))
        .collect::<Result<_>>()?;
    Ok(odd_variant(p, i, j, |_| C64::new(1.0, 0.0), &psi))
}

/// `true` when `r_ij` has norm below `1e-10` at three seeded generic `tau`.
pub fn is_identically_zero(p: &AlgebraParams, i: usize, j: usize, seed: u64) -> Result<bool> {
    let mut sampler = GenericTauSampler::new(*p.lat(), seed);
    for _ in 0..3 {
        let t = sampler.sample();
        if relation_r_ij(&p.with_tau(t), i, j)?.norm() >= 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}
