//! Graded dimensions of `T(V) / (rel)`.
//!
//! The degree-`d` part of the ideal is built recursively as
//! `I_d = I_{d-1} ⊗ V + V^{⊗(d-2)} ⊗ rel`, and every row is assembled by
//! index arithmetic on orthonormal bases of the previous degree. When `rel`
//! is a sum of weight spaces for the diagonal action of `S`, the computation
//! splits into one block per weight (total index mod `n`).

use serde::{Deserialize, Serialize};

use crate::complex::C64;
use crate::error::{Error, Result};
use crate::linalg::{column_rank, orthonormal_rows, MIN_GAP, RANK_TOL};
use crate::tensor::RelationSpace;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 5;
/// Default cap on the number of columns `n^D_max`.
pub const DEFAULT_MAX_COLUMNS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub n: usize,
    /// `dims[d]` is the dimension of the degree-`d` component.
    pub dims: Vec<usize>,
}

impl GradedDims {
    /// Dimensions of the polynomial ring in `n` variables up to `d_max`.
    pub fn polynomial(n: usize, d_max: usize) -> Self {
        Self {
            n,
            dims: (0..=d_max).map(|d| polynomial_dim(n, d)).collect(),
        }
    }

    pub fn d_max(&self) -> usize {
        self.dims.len() - 1
    }
}

/// `C(n + d - 1, d)`.
pub fn polynomial_dim(n: usize, d: usize) -> usize {
    // Exact in u128 for every size this crate can handle.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d as u128 {
        num *= n as u128 + i;
        den *= i + 1;
    }
    (num / den) as usize
}

#[derive(Debug, Clone, Copy)]
pub struct HilbertOptions {
    pub max_columns: usize,
    pub rel_tol: f64,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        Self {
            max_columns: DEFAULT_MAX_COLUMNS,
            rel_tol: RANK_TOL,
        }
    }
}

pub fn graded_dims(rel: &RelationSpace, d_max: usize) -> Result<GradedDims> {
    graded_dims_with(rel, d_max, &HilbertOptions::default())
}

/// Orthonormal basis of a block of `I_d`, as rows over the block's columns.
type Block = Vec<Vec<C64>>;

pub fn graded_dims_with(
    rel: &RelationSpace,
    d_max: usize,
    opts: &HilbertOptions,
) -> Result<GradedDims> {
    let n = rel.n;
    if d_max > MAX_DEGREE {
        return Err(Error::ResourceExceeded {
            size: d_max,
            cap: MAX_DEGREE,
        });
    }
    let size = n.checked_pow(d_max as u32).unwrap_or(usize::MAX);
    if size > opts.max_columns {
        return Err(Error::ResourceExceeded {
            size,
            cap: opts.max_columns,
        });
    }
    let mut dims = vec![1usize];
    if d_max >= 1 {
        dims.push(n);
    }
    if d_max < 2 {
        return Ok(GradedDims { n, dims });
    }
    let rel_rows: Vec<Vec<C64>> = rel
        .basis_vectors()
        .into_iter()
        .map(|v| v.into_coeffs())
        .collect();
    let graded = weight_blocks(n, &rel_rows, opts.rel_tol)?;
    match graded {
        Some(blocks) => {
            // Degree 2: a word (a, b) of weight w sits at index a in block w.
            let mut prev: Vec<Block> = blocks;
            let rel_blocks = prev.clone();
            dims.push(n * n - prev.iter().map(|b| b.len()).sum::<usize>());
            for d in 3..=d_max {
                let mut next = Vec::with_capacity(n);
                for w in 0..n {
                    let cols = n.pow(d as u32 - 1);
                    let mut rows: Vec<Vec<C64>> = Vec::new();
                    // I_{d-1, w-v} ⊗ x_v: block index of (u, v) is index(u).
                    for v in 0..n {
                        let wp = (w + n - v) % n;
                        for b in &prev[wp] {
                            let mut row = vec![C64::new(0.0, 0.0); cols];
                            for (idx, c) in b.iter().enumerate() {
                                if c.norm_sqr() == 0.0 {
                                    continue;
                                }
                                // idx indexes the first d-2 letters of u.
                                row[idx * n + completing_letter(idx, n, wp)] = *c;
                            }
                            rows.push(row);
                        }
                    }
                    // x_p ⊗ rel_u with p of length d-2: block index is
                    // index(p) * n + a for the monomial x_a x_b of rel.
                    for p in 0..n.pow(d as u32 - 2) {
                        let u = completing_letter(p, n, w);
                        for g in &rel_blocks[u] {
                            let mut row = vec![C64::new(0.0, 0.0); cols];
                            for (a, c) in g.iter().enumerate() {
                                row[p * n + a] = *c;
                            }
                            rows.push(row);
                        }
                    }
                    let rb = orthonormal_rows(rows, cols, opts.rel_tol);
                    if rb.gap < MIN_GAP {
                        return Err(Error::RankAmbiguous {
                            gap: rb.gap,
                            threshold: MIN_GAP,
                        });
                    }
                    next.push(rb.basis);
                }
                dims.push(n.pow(d as u32) - next.iter().map(|b| b.len()).sum::<usize>());
                prev = next;
            }
        }
        None => {
            let mut prev: Block = rel_rows.clone();
            dims.push(n * n - prev.len());
            for d in 3..=d_max {
                let cols = n.pow(d as u32);
                let mut rows = Vec::new();
                for b in &prev {
                    for v in 0..n {
                        let mut row = vec![C64::new(0.0, 0.0); cols];
                        for (idx, c) in b.iter().enumerate() {
                            row[idx * n + v] = *c;
                        }
                        rows.push(row);
                    }
                }
                for p in 0..n.pow(d as u32 - 2) {
                    for g in &rel_rows {
                        let mut row = vec![C64::new(0.0, 0.0); cols];
                        for (idx, c) in g.iter().enumerate() {
                            row[p * n * n + idx] = *c;
                        }
                        rows.push(row);
                    }
                }
                let rb = orthonormal_rows(rows, cols, opts.rel_tol);
                if rb.gap < MIN_GAP {
                    return Err(Error::RankAmbiguous {
                        gap: rb.gap,
                        threshold: MIN_GAP,
                    });
                }
                dims.push(cols - rb.basis.len());
                prev = rb.basis;
            }
        }
    }
    Ok(GradedDims { n, dims })
}

fn digit_sum(mut x: usize, n: usize) -> usize {
    let mut s = 0;
    while x > 0 {
        s += x % n;
        x /= n;
    }
    s
}

/// Letter that completes the prefix with index `idx` to total weight `w`.
fn completing_letter(idx: usize, n: usize, w: usize) -> usize {
    (w + n - digit_sum(idx, n) % n) % n
}

/// Project the rows of `rel` onto weight spaces. Returns per-weight bases
/// indexed by the first letter when the decomposition is exact, `None`
/// otherwise.
fn weight_blocks(n: usize, rel_rows: &[Vec<C64>], rel_tol: f64) -> Result<Option<Vec<Block>>> {
    let mut blocks = Vec::with_capacity(n);
    let mut total = 0;
    for w in 0..n {
        let m = crate::linalg::CMat::from_fn(n, rel_rows.len(), |a, c| {
            let b = (w + n - a) % n;
            rel_rows[c][a * n + b]
        });
        let info = column_rank(&m, rel_tol);
        total += info.rank;
        let basis: Block = (0..info.rank)
            .map(|c| info.basis.column(c).iter().copied().collect())
            .collect();
        blocks.push(basis);
    }
    if total != rel_rows.len() {
        return Ok(None);
    }
    Ok(Some(blocks))
}
