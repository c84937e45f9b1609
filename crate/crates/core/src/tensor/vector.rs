use serde::{Deserialize, Serialize};

use crate::complex::{serde_cx, C64};
use crate::error::{Error, Result};
use crate::linalg::CMat;

/// Coefficients over the monomials `x_{i_1} ⊗ ... ⊗ x_{i_d}` of `V^{⊗d}`,
/// row-major in `(i_1, ..., i_d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorVector {
    n: usize,
    degree: usize,
    #[serde(with = "serde_cx::vec")]
    coeffs: Vec<C64>,
}

impl TensorVector {
    pub fn zeros(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            coeffs: vec![C64::new(0.0, 0.0); n.pow(degree as u32)],
        }
    }

    pub fn from_coeffs(n: usize, degree: usize, coeffs: Vec<C64>) -> Result<Self> {
        if degree == 0 || coeffs.len() != n.pow(degree as u32) {
            return Err(Error::InvalidParams(format!(
                "expected {} coefficients for degree {degree}, got {}",
                n.pow(degree as u32),
                coeffs.len()
            )));
        }
        Ok(Self { n, degree, coeffs })
    }

    /// The monomial `x_{w_1} ⊗ ... ⊗ x_{w_d}`.
    pub fn monomial(n: usize, word: &[usize]) -> Self {
        let mut v = Self::zeros(n, word.len());
        let i = v.index(word);
        v.coeffs[i] = C64::new(1.0, 0.0);
        v
    }

    /// `x_a ⊗ x_b - x_b ⊗ x_a`.
    pub fn commutator(n: usize, a: usize, b: usize) -> Self {
        let mut v = Self::zeros(n, 2);
        v.coeffs[a * n + b] += 1.0;
        v.coeffs[b * n + a] -= 1.0;
        v
    }

    /// `x_a ⊗ x_b + x_b ⊗ x_a`.
    pub fn anticommutator(n: usize, a: usize, b: usize) -> Self {
        let mut v = Self::zeros(n, 2);
        v.coeffs[a * n + b] += 1.0;
        v.coeffs[b * n + a] += 1.0;
        v
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

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn index(&self, word: &[usize]) -> usize {
        debug_assert_eq!(word.len(), self.degree);
        word.iter().fold(0, |acc, &w| acc * self.n + w)
    }

    pub fn get(&self, word: &[usize]) -> C64 {
        self.coeffs[self.index(word)]
    }

    /// Coefficient of `x_a ⊗ x_b`.
    pub fn get2(&self, a: usize, b: usize) -> C64 {
        self.coeffs[a * self.n + b]
    }

    pub(crate) fn add2(&mut self, a: usize, b: usize, value: C64) {
        let n = self.n;
        self.coeffs[a * n + b] += value;
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..*self
        }
    }

    /// Divide by the largest-magnitude coefficient; `None` for the zero
    /// vector.
    pub fn normalized_by_max(&self) -> Option<Self> {
        let pivot = self
            .coeffs
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
        if pivot.norm() == 0.0 {
            return None;
        }
        Some(self.scale(1.0 / pivot))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self { coeffs, ..*self }
    }

    /// Relative distance `min_c |v - c u| / |v|` of `v = other` from the line
    /// through `u = self`; zero iff the vectors are proportional.
    pub fn line_distance(&self, other: &Self) -> f64 {
        let (a, b) = (self.norm(), other.norm());
        if a == 0.0 || b == 0.0 {
            return if a == b { 0.0 } else { 1.0 };
        }
        let ip: C64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x.conj() * y)
            .sum();
        let c = ip / (a * a);
        let res: f64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (y - c * x).norm_sqr())
            .sum();
        res.sqrt() / b
    }

    /// Factor swap `x_a ⊗ x_b ↦ x_b ⊗ x_a` on degree 2.
    pub fn swap(&self) -> Self {
        assert_eq!(self.degree, 2);
        let n = self.n;
        let mut out = Self::zeros(n, 2);
        for a in 0..n {
            for b in 0..n {
                out.coeffs[b * n + a] = self.coeffs[a * n + b];
            }
        }
        out
    }

    /// `(A ⊗ B) v` on degree 2, with `A`, `B` acting on `V`.
    pub fn map2(&self, a: &CMat, b: &CMat) -> Self {
        assert_eq!(self.degree, 2);
        let n = self.n;
        let v = CMat::from_fn(n, n, |i, j| self.coeffs[i * n + j]);
        let w = a * v * b.transpose();
        let mut out = Self::zeros(n, 2);
        for i in 0..n {
            for j in 0..n {
                out.coeffs[i * n + j] = w[(i, j)];
            }
        }
        out
    }

    /// Apply the substitution `x_i ↦ x_{sigma(i)}` in every factor.
    pub fn permute(&self, sigma: &[usize]) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n, self.degree);
        let mut word = vec![0usize; self.degree];
        for (idx, c) in self.coeffs.iter().enumerate() {
            let mut r = idx;
            for slot in (0..self.degree).rev() {
                word[slot] = sigma[r % n];
                r /= n;
            }
            let j = out.index(&word);
            out.coeffs[j] += c;
        }
        out
    }
}
