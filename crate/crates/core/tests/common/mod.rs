//! Reference implementations shared by the integration tests. They take a
//! different numerical route from the library so agreement is meaningful.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

pub fn e(w: C64) -> C64 {
    (C64::new(0.0, 2.0 * PI) * w).exp()
}

/// Jacobi triple product:
/// `sum_m (-1)^m q^{m(m-1)/2} w^m = prod_{m>=1} (1 - q^m)(1 - w q^{m-1})(1 - q^m / w)`
/// with `q = e(eta)`, `w = e(z)`.
pub fn theta_product(z: C64, eta: C64) -> C64 {
    let q = e(eta);
    let w = e(z);
    let mut acc = C64::new(1.0, 0.0);
    let mut qm = C64::new(1.0, 0.0); // q^{m-1}
    for _ in 1..400 {
        let qn = qm * q; // q^m
        acc *= (1.0 - qn) * (1.0 - w * qm) * (1.0 - qn / w);
        qm = qn;
        if qm.norm() < 1e-30 {
            break;
        }
    }
    acc
}

/// `theta_alpha` assembled from [`theta_product`].
pub fn theta_alpha_product(alpha: i64, z: C64, eta: C64, n: usize) -> C64 {
    let nf = n as f64;
    let a = alpha as f64;
    let pref = e(z * a + a / (2.0 * nf) + eta * (a * (a - nf) / (2.0 * nf)));
    (0..n).fold(pref, |acc, m| {
        acc * theta_product(z + m as f64 / nf + eta * (a / nf), eta)
    })
}

pub fn md(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Coefficients of `r_ij` indexed `a n + b` for `x_a ⊗ x_b`, from the
/// product-formula thetas.
pub fn relation_oracle(n: usize, k: usize, i: usize, j: usize, tau: C64, eta: C64) -> Vec<C64> {
    let th = |a: i64, z: C64| theta_alpha_product(a, z, eta, n);
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let mut v = vec![C64::new(0.0, 0.0); n * n];
    for r in 0..n as i64 {
        let num = th(j - i + (k - 1) * r, C64::new(0.0, 0.0));
        let den = th(j - i - r, -tau) * th(k * r, tau);
        v[md(j - r, n) * n + md(i + r, n)] += num / den;
    }
    v
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// Coprime pairs `(n, k)` with `1 <= k < n <= max_n`.
pub fn coprime_pairs(max_n: usize) -> Vec<(usize, usize)> {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    (2..=max_n)
        .flat_map(|n| (1..n).filter(move |&k| gcd(n, k) == 1).map(move |k| (n, k)))
        .collect()
}
