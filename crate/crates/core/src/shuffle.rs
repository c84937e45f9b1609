//! The elliptic shuffle product on `F_n(E, tau) = ⊕_d Sym^d Theta_{n, c_d}`,
//! `c_d = (n-1)/2 + (1-d) n tau`, for `k = 1`, together with the functions
//! `f_ij`, `h_ij` and the map `psi` from antisymmetric theta functions to
//! relations.

use crate::complex::{e_real, C64};
use crate::error::{Error, Result};
use crate::tensor::{md, AlgebraParams, TensorVector};
use crate::theta::{theta, theta_alpha, theta_alpha_c};

/// `|theta|` below this value at an evaluation point counts as a pole.
pub const POLE_FLOOR: f64 = 1e-8;
/// Largest total degree accepted by [`star_general`].
pub const MAX_STAR_DEGREE: usize = 4;

fn cz() -> C64 {
    C64::new(0.0, 0.0)
}

/// Character `c_d = (n-1)/2 + (1-d) n tau` of the degree-`d` component.
pub fn character(p: &AlgebraParams, d: usize) -> C64 {
    let n = p.n() as f64;
    C64::new((n - 1.0) / 2.0, 0.0) + p.tau() * ((1.0 - d as f64) * n)
}

/// `sum_alpha c_alpha theta_{alpha_1, c_d} ⊗ ... ⊗ theta_{alpha_d, c_d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymFunction {
    n: usize,
    degree: usize,
    coeffs: Vec<C64>,
}

impl SymFunction {
    pub fn new(n: usize, degree: usize, coeffs: Vec<C64>) -> Result<Self> {
        if degree == 0 || coeffs.len() != n.pow(degree as u32) {
            return Err(Error::InvalidParams(format!(
                "need n^d = {} coefficients",
                n.pow(degree as u32)
            )));
        }
        Ok(Self { n, degree, coeffs })
    }

    /// The degree-one element `theta_alpha`.
    pub fn theta(n: usize, alpha: i64) -> Self {
        let mut coeffs = vec![cz(); n];
        coeffs[md(alpha, n)] = C64::new(1.0, 0.0);
        Self {
            n,
            degree: 1,
            coeffs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    fn word(&self, mut idx: usize) -> Vec<usize> {
        let mut w = vec![0; self.degree];
        for slot in (0..self.degree).rev() {
            w[slot] = idx % self.n;
            idx /= self.n;
        }
        w
    }

    fn index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    /// Average of the coefficient array over all index permutations.
    pub fn symmetrize(&self) -> Self {
        let perms = permutations(self.degree);
        let mut out = vec![cz(); self.coeffs.len()];
        for (idx, c) in self.coeffs.iter().enumerate() {
            let w = self.word(idx);
            for p in &perms {
                let pw: Vec<usize> = p.iter().map(|&i| w[i]).collect();
                out[self.index(&pw)] += c / perms.len() as f64;
            }
        }
        Self {
            coeffs: out,
            ..*self
        }
    }

    /// Largest coefficient change under symmetrisation, relative to the
    /// largest coefficient.
    pub fn asymmetry(&self) -> f64 {
        let s = self.symmetrize();
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        self.coeffs
            .iter()
            .zip(&s.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }

    /// Value at `z` (one point per variable).
    pub fn eval(&self, p: &AlgebraParams, z: &[C64]) -> Result<C64> {
        if z.len() != self.degree {
            return Err(Error::InvalidParams(format!(
                "expected {} points",
                self.degree
            )));
        }
        let c = character(p, self.degree);
        let table: Vec<Vec<C64>> = z
            .iter()
            .map(|&zl| {
                (0..self.n as i64)
                    .map(|a| Ok(theta_alpha_c(a, c, zl, p.lat())?.value))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() != 0.0)
            .map(|(idx, c)| {
                let w = self.word(idx);
                c * w
                    .iter()
                    .enumerate()
                    .map(|(l, &a)| table[l][a])
                    .product::<C64>()
            })
            .sum())
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

/// Number of index orbits under permutation, i.e. the dimension of the
/// symmetric coefficient arrays of degree `d`.
pub fn symmetric_coefficient_dim(n: usize, d: usize) -> usize {
    let mut count = 0;
    for idx in 0..n.pow(d as u32) {
        let mut w = Vec::with_capacity(d);
        let mut r = idx;
        for _ in 0..d {
            w.push(r % n);
            r /= n;
        }
        // Count each orbit once, at its non-increasing representative.
        if w.windows(2).all(|p| p[0] >= p[1]) {
            count += 1;
        }
    }
    count
}

fn pole_checked(v: C64) -> Result<C64> {
    if v.norm() < POLE_FLOOR {
        Err(Error::PoleProximity { modulus: v.norm() })
    } else {
        Ok(v)
    }
}

/// `theta(u + n tau) / theta(u)`.
fn weight(p: &AlgebraParams, u: C64) -> Result<C64> {
    let nt = p.tau() * p.n() as f64;
    Ok(theta(u + nt, p.lat())? / pole_checked(theta(u, p.lat())?)?)
}

/// `(f*g)(x,y) = f(x) g(y+2tau) w(x-y) + f(y) g(x+2tau) w(y-x)`,
/// `w(u) = theta(u + n tau)/theta(u)`.
pub fn star_degree11(
    f: &SymFunction,
    g: &SymFunction,
    p: &AlgebraParams,
    x: C64,
    y: C64,
) -> Result<C64> {
    if f.degree != 1 || g.degree != 1 {
        return Err(Error::InvalidParams(
            "star_degree11 takes degree-one factors".into(),
        ));
    }
    let t2 = p.tau() * 2.0;
    Ok(f.eval(p, &[x])? * g.eval(p, &[y + t2])? * weight(p, x - y)?
        + f.eval(p, &[y])? * g.eval(p, &[x + t2])? * weight(p, y - x)?)
}

/// `(f*g)(z)` as a sum over `(a, b)`-shuffles, `a = deg f`, `b = deg g`.
pub fn star_general(
    f: &SymFunction,
    g: &SymFunction,
    p: &AlgebraParams,
    points: &[C64],
) -> Result<C64> {
    let (a, b) = (f.degree, g.degree);
    let total = a + b;
    if total > MAX_STAR_DEGREE {
        return Err(Error::ResourceExceeded {
            size: total,
            cap: MAX_STAR_DEGREE,
        });
    }
    if points.len() != total {
        return Err(Error::InvalidParams(format!("expected {total} points")));
    }
    let shift = p.tau() * (2.0 * a as f64);
    let mut acc = cz();
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != a {
            continue;
        }
        let left: Vec<usize> = (0..total).filter(|i| mask & (1 << i) != 0).collect();
        let right: Vec<usize> = (0..total).filter(|i| mask & (1 << i) == 0).collect();
        let mut c = C64::new(1.0, 0.0);
        for &i in &left {
            for &j in &right {
                c *= weight(p, points[i] - points[j])?;
            }
        }
        let zf: Vec<C64> = left.iter().map(|&i| points[i]).collect();
        let zg: Vec<C64> = right.iter().map(|&j| points[j] + shift).collect();
        acc += c * f.eval(p, &zf)? * g.eval(p, &zg)?;
    }
    Ok(acc)
}

/// `f*g` as an element of `F_{a+b}`, recovered from values on a tensor grid
/// `o_l + m/n`. Translation by `1/n` diagonalises the basis, so the fit is a
/// discrete Fourier inversion along each variable.
pub fn star_product(f: &SymFunction, g: &SymFunction, p: &AlgebraParams) -> Result<SymFunction> {
    let n = p.n();
    let total = f.degree + g.degree;
    if total > MAX_STAR_DEGREE {
        return Err(Error::ResourceExceeded {
            size: total,
            cap: MAX_STAR_DEGREE,
        });
    }
    let c = character(p, total);
    let lat = p.lat();
    // Offsets with pairwise differences well away from Lambda + (1/n)Z,
    // nudged until no basis function is close to a zero at an offset. They
    // sit around the point where the shifted basis has argument zero, which
    // keeps the magnitudes across alpha comparable.
    let centre = c / n as f64 - (n as f64 - 1.0) / (2.0 * n as f64);
    let mut offsets = Vec::new();
    let mut base_vals = Vec::new();
    for attempt in 0..40 {
        let s = attempt as f64 * 0.0371;
        let o: Vec<C64> = (0..total)
            .map(|l| centre + lat.point(0.05 + s + 0.173 * l as f64, 0.11 + 0.23 * l as f64))
            .collect();
        let vals: Vec<Vec<C64>> = o
            .iter()
            .map(|&ol| {
                (0..n as i64)
                    .map(|a| Ok(theta_alpha_c(a, c, ol, lat)?.value))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let mags = vals.iter().flatten().map(|v| v.norm());
        let (lo, hi) = mags.fold((f64::INFINITY, 0.0f64), |(l, h), m| (l.min(m), h.max(m)));
        if lo > 1e-3 * hi {
            offsets = o;
            base_vals = vals;
            break;
        }
    }
    if offsets.is_empty() {
        return Err(Error::SingularMap { ratio: 0.0 });
    }
    let size = n.pow(total as u32);
    let mut values = vec![cz(); size];
    let mut pts = vec![cz(); total];
    for (idx, v) in values.iter_mut().enumerate() {
        let mut r = idx;
        for l in (0..total).rev() {
            pts[l] = offsets[l] + (r % n) as f64 / n as f64;
            r /= n;
        }
        *v = star_general(f, g, p, &pts)?;
    }
    // Inverse transform along every axis: values[.., m_l, ..] -> [.., alpha_l, ..].
    let nf = n as f64;
    for axis in 0..total {
        let stride = n.pow((total - 1 - axis) as u32);
        let mut out = vec![cz(); size];
        for (idx, o) in out.iter_mut().enumerate() {
            let alpha = (idx / stride) % n;
            let base = idx - alpha * stride;
            *o = (0..n)
                .map(|m| values[base + m * stride] * e_real(-((alpha * m) as f64) / nf))
                .sum::<C64>()
                / nf;
        }
        values = out;
    }
    for (idx, v) in values.iter_mut().enumerate() {
        let mut r = idx;
        for l in (0..total).rev() {
            *v /= base_vals[l][r % n];
            r /= n;
        }
    }
    SymFunction::new(n, total, values)
}

/// Image of a degree-two tensor under `x_a ↦ theta_a` followed by the
/// shuffle product, at `(x, y)`: returns the value and the sum of the
/// magnitudes of its terms.
pub fn tensor_image(v: &TensorVector, p: &AlgebraParams, x: C64, y: C64) -> Result<(C64, f64)> {
    let n = p.n();
    let lat = p.lat();
    let t2 = p.tau() * 2.0;
    let th = |z: C64| -> Result<Vec<C64>> {
        (0..n as i64)
            .map(|a| Ok(theta_alpha(a, z, lat)?.value))
            .collect()
    };
    let (tx, ty, tx2, ty2) = (th(x)?, th(y)?, th(x + t2)?, th(y + t2)?);
    let (wxy, wyx) = (weight(p, x - y)?, weight(p, y - x)?);
    let mut acc = cz();
    let mut scale = 0.0;
    for a in 0..n {
        for b in 0..n {
            let c = v.get2(a, b);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let t1 = c * tx[a] * ty2[b] * wxy;
            let t2 = c * ty[a] * tx2[b] * wyx;
            acc += t1 + t2;
            scale += t1.norm() + t2.norm();
        }
    }
    Ok((acc, scale))
}

/// `f_ij(x, y) = theta_i(x) theta_j(y) - theta_i(y) theta_j(x)`.
pub fn f_ij(i: i64, j: i64, p: &AlgebraParams, x: C64, y: C64) -> Result<C64> {
    let lat = p.lat();
    let t = |a, z| -> Result<C64> { Ok(theta_alpha(a, z, lat)?.value) };
    Ok(t(i, x)? * t(j, y)? - t(i, y)? * t(j, x)?)
}

/// `psi(f_ij)(x, y) = theta(x-y+(2-n)tau)/theta(x-y+2tau) f_ij(x+tau, y-tau)`.
pub fn psi_map(i: i64, j: i64, p: &AlgebraParams, x: C64, y: C64) -> Result<C64> {
    let lat = p.lat();
    let tau = p.tau();
    let n = p.n() as f64;
    let den = pole_checked(theta(x - y + tau * 2.0, lat)?)?;
    Ok(theta(x - y + tau * (2.0 - n), lat)? / den * f_ij(i, j, p, x + tau, y - tau)?)
}

/// `d = (1/n) theta(1/n) ... theta((n-1)/n) theta(-n tau) theta_{j-i}(0)`.
pub fn h_normalizer(i: i64, j: i64, p: &AlgebraParams) -> Result<C64> {
    let lat = p.lat();
    let n = p.n();
    let mut d = C64::new(1.0 / n as f64, 0.0);
    for m in 1..n {
        d *= theta(C64::new(m as f64 / n as f64, 0.0), lat)?;
    }
    d *= theta(-p.tau() * n as f64, lat)?;
    Ok(d * theta_alpha(j - i, cz(), lat)?.value)
}

/// `h_ij(x,y) = d sum_r theta_{j-r}(x) theta_{i+r}(y) / (theta_{j-i-r}(-tau) theta_r(tau))`.
pub fn h_ij(i: i64, j: i64, p: &AlgebraParams, x: C64, y: C64) -> Result<C64> {
    p.require_generic()?;
    let lat = p.lat();
    let tau = p.tau();
    let t = |a, z| -> Result<C64> { Ok(theta_alpha(a, z, lat)?.value) };
    let mut acc = cz();
    for r in 0..p.n() as i64 {
        acc += t(j - r, x)? * t(i + r, y)? / (t(j - i - r, -tau)? * t(r, tau)?);
    }
    Ok(h_normalizer(i, j, p)? * acc)
}

/// `h_ij` at torsion points: mean over a circle of radius `radius` in `tau`.
pub fn h_ij_continued(
    i: i64,
    j: i64,
    p: &AlgebraParams,
    x: C64,
    y: C64,
    radius: f64,
    points: usize,
) -> Result<C64> {
    let mut acc = cz();
    for m in 0..points {
        let t = p.tau() + e_real(m as f64 / points as f64) * radius;
        acc += h_ij(i, j, &p.with_tau(t), x, y)?;
    }
    Ok(acc / points as f64)
}

/// Left and right sides of
/// `theta(-n tau + x - y)/theta(x-y) (theta_i(x+tau) theta_j(y+tau) - theta_i(y+tau) theta_j(x+tau))
///  = h_ij(x, y + 2 tau)`.
pub fn alt_identity_sides(i: i64, j: i64, p: &AlgebraParams, x: C64, y: C64) -> Result<(C64, C64)> {
    let lat = p.lat();
    let tau = p.tau();
    let n = p.n() as f64;
    let lhs = theta(x - y - tau * n, lat)? / pole_checked(theta(x - y, lat)?)?
        * f_ij(i, j, p, x + tau, y + tau)?;
    let rhs = h_ij(i, j, p, x, y + tau * 2.0)?;
    Ok((lhs, rhs))
}
