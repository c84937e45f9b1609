use serde::{Deserialize, Serialize};

use crate::complex::{e_real, C64};
use crate::linalg::CMat;

/// The word `S^a T^b eps^c` in the Heisenberg group of order `n^3`.
///
/// On `V` the generators act by `S x_i = w^i x_i`, `T x_i = x_{i+1}` and
/// `eps = w` with `w = e(1/n)`, so that `ST = w TS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    n: usize,
    a: usize,
    b: usize,
    c: usize,
}

impl HeisenbergElement {
    pub fn new(n: usize, a: i64, b: i64, c: i64) -> Self {
        let m = |x: i64| x.rem_euclid(n as i64) as usize;
        Self {
            n,
            a: m(a),
            b: m(b),
            c: m(c),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, 0, 0, 0)
    }

    pub fn s(n: usize) -> Self {
        Self::new(n, 1, 0, 0)
    }

    pub fn t(n: usize) -> Self {
        Self::new(n, 0, 1, 0)
    }

    pub fn eps(n: usize) -> Self {
        Self::new(n, 0, 0, 1)
    }

    pub fn exponents(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Product `self * other`, using `T^b S^{a'} = eps^{-a'b} S^{a'} T^b`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        let (a2, b2, c2) = (other.a as i64, other.b as i64, other.c as i64);
        Self::new(self.n, a + a2, b + b2, c + c2 - a2 * b)
    }

    pub fn pow(&self, m: i64) -> Self {
        let base = if m < 0 { self.inverse() } else { *self };
        (0..m.unsigned_abs()).fold(Self::identity(self.n), |acc, _| acc.compose(&base))
    }

    pub fn inverse(&self) -> Self {
        // (S^a T^b eps^c)^{-1} = T^{-b} S^{-a} eps^{-c} = S^{-a} T^{-b} eps^{-c-ab}
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        Self::new(self.n, -a, -b, -c - a * b)
    }

    /// Matrix on `V`: `x_i ↦ w^{a(i+b)+c} x_{i+b}`.
    pub fn matrix(&self) -> CMat {
        let n = self.n;
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            let j = (i + self.b) % n;
            m[(j, i)] = e_real(((self.a * j + self.c) % n) as f64 / n as f64);
        }
        m
    }
}

/// Kronecker power of the matrix of `g` acting on `V^{⊗degree}`.
pub fn heisenberg_matrix(g: &HeisenbergElement, degree: usize) -> CMat {
    let base = g.matrix();
    let mut out = CMat::from_element(1, 1, C64::new(1.0, 0.0));
    for _ in 0..degree {
        out = out.kronecker(&base);
    }
    out
}
