//! Rank decisions, orthonormal bases and subspace distances.

use nalgebra::DMatrix;

use crate::complex::C64;

pub type CMat = DMatrix<C64>;

/// Default relative threshold `sigma_i > tol * sigma_max` for counting rank.
pub const RANK_TOL: f64 = 1e-8;
/// Smallest acceptable ratio between the last kept and first dropped
/// singular value.
pub const MIN_GAP: f64 = 100.0;

#[derive(Debug, Clone)]
pub struct RankInfo {
    pub rank: usize,
    /// Singular values in decreasing order.
    pub singular_values: Vec<f64>,
    /// `sigma_{rank-1} / sigma_rank`; infinite when nothing was dropped or
    /// the first dropped value is exactly zero.
    pub gap: f64,
    /// Orthonormal basis of the column space, one column per kept value.
    pub basis: CMat,
}

/// Numerical column rank and column-space basis via the SVD.
pub fn column_rank(m: &CMat, rel_tol: f64) -> RankInfo {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return RankInfo {
            rank: 0,
            singular_values: vec![],
            gap: f64::INFINITY,
            basis: CMat::zeros(rows, 0),
        };
    }
    let (sv, u) = thin_svd(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > rel_tol * smax).count()
    };
    let gap = gap_at(&sv, rank);
    let mut basis = CMat::zeros(rows, rank);
    for k in 0..rank {
        basis.set_column(k, &u.column(k));
    }
    RankInfo {
        rank,
        singular_values: sv,
        gap,
        basis,
    }
}

/// Thin SVD `m = U S V^*`: singular values in decreasing order and the
/// matching columns of `U`.
///
/// Uses faer; the nalgebra complex SVD was observed to return inaccurate
/// factorizations on some rank-deficient inputs.
pub fn thin_svd(m: &CMat) -> (Vec<f64>, CMat) {
    let (rows, cols) = m.shape();
    let fm = faer::Mat::<C64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let svd = fm.thin_svd().expect("SVD did not converge");
    let s = svd.S().column_vector();
    let u = svd.U();
    let mut order: Vec<usize> = (0..s.nrows()).collect();
    order.sort_by(|&a, &b| s[b].re.total_cmp(&s[a].re));
    let sv = order.iter().map(|&i| s[i].re).collect();
    let out = CMat::from_fn(rows, order.len(), |i, k| u[(i, order[k])]);
    (sv, out)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    thin_svd(m).0
}

fn gap_at(sv: &[f64], rank: usize) -> f64 {
    if rank == 0 || rank >= sv.len() || sv[rank] == 0.0 {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank]
    }
}

/// Orthogonal projector `Q Q^*` onto the span of orthonormal columns.
pub fn projector(q: &CMat) -> CMat {
    q * q.adjoint()
}

/// Frobenius distance between the projectors onto two column spans.
pub fn projector_distance(q1: &CMat, q2: &CMat) -> f64 {
    (projector(q1) - projector(q2)).norm()
}

/// Relative distance of `v` from the span of the orthonormal columns `q`.
pub fn residual_from_span(q: &CMat, v: &[C64]) -> f64 {
    let v = nalgebra::DVector::from_column_slice(v);
    let nv = v.norm();
    if nv == 0.0 {
        return 0.0;
    }
    let proj = q * (q.adjoint() * &v);
    (v - proj).norm() / nv
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of a row space.
#[derive(Debug, Clone)]
pub struct RowBasis {
    pub basis: Vec<Vec<C64>>,
    /// Ratio between the last accepted and the first rejected pivot (or
    /// singular value when the SVD fallback was used).
    pub gap: f64,
    pub used_svd: bool,
}

/// Orthonormalise a set of rows of length `cols` with column-pivoted
/// modified Gram-Schmidt. Falls back to the SVD if the pivot sequence does
/// not show a clear gap.
pub fn orthonormal_rows(rows: Vec<Vec<C64>>, cols: usize, rel_tol: f64) -> RowBasis {
    let gs = pivoted_gram_schmidt(rows.clone(), rel_tol);
    if gs.gap >= MIN_GAP {
        return gs;
    }
    let m = CMat::from_fn(cols, rows.len(), |i, j| rows[j][i]);
    let info = column_rank(&m, rel_tol);
    let basis = (0..info.rank)
        .map(|k| info.basis.column(k).iter().copied().collect())
        .collect();
    RowBasis {
        basis,
        gap: info.gap,
        used_svd: true,
    }
}

fn pivoted_gram_schmidt(mut rows: Vec<Vec<C64>>, rel_tol: f64) -> RowBasis {
    let mut norms: Vec<f64> = rows.iter().map(|r| norm(r)).collect();
    let scale = norms.iter().cloned().fold(0.0, f64::max);
    let mut alive: Vec<bool> = vec![true; rows.len()];
    let mut basis: Vec<Vec<C64>> = Vec::new();
    let mut last_kept = f64::INFINITY;
    if scale == 0.0 {
        return RowBasis {
            basis,
            gap: f64::INFINITY,
            used_svd: false,
        };
    }
    loop {
        let pick = (0..rows.len())
            .filter(|&i| alive[i])
            .max_by(|&a, &b| norms[a].total_cmp(&norms[b]));
        let Some(p) = pick else {
            return RowBasis {
                basis,
                gap: f64::INFINITY,
                used_svd: false,
            };
        };
        if norms[p] <= rel_tol * scale {
            let gap = if norms[p] == 0.0 {
                f64::INFINITY
            } else {
                last_kept / norms[p]
            };
            return RowBasis {
                basis,
                gap,
                used_svd: false,
            };
        }
        alive[p] = false;
        let mut q = std::mem::take(&mut rows[p]);
        // Second projection pass keeps the basis orthogonal to working
        // precision.
        for b in &basis {
            let c = dot(b, &q);
            q.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let nq = norm(&q);
        last_kept = last_kept.min(norms[p]);
        q.iter_mut().for_each(|x| *x /= nq);
        for i in 0..rows.len() {
            if !alive[i] {
                continue;
            }
            let c = dot(&q, &rows[i]);
            rows[i].iter_mut().zip(&q).for_each(|(x, y)| *x -= c * y);
            norms[i] = norm(&rows[i]);
        }
        basis.push(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn rank_of_dependent_columns() {
        let m = CMat::from_row_slice(
            3,
            3,
            &[
                cx(1.),
                cx(2.),
                cx(3.),
                cx(2.),
                cx(4.),
                cx(6.),
                cx(0.),
                cx(1.),
                cx(1.),
            ],
        );
        let info = column_rank(&m.transpose(), RANK_TOL);
        assert_eq!(info.rank, 2);
        assert!(info.gap > 1e6);
    }

    #[test]
    fn gram_schmidt_matches_svd_rank() {
        let rows = vec![
            vec![cx(1.), cx(0.), cx(1.)],
            vec![cx(2.), cx(0.), cx(2.)],
            vec![cx(0.), C64::new(0.0, 1.0), cx(0.)],
        ];
        let rb = orthonormal_rows(rows, 3, RANK_TOL);
        assert_eq!(rb.basis.len(), 2);
        assert!(!rb.used_svd);
        assert!(dot(&rb.basis[0], &rb.basis[1]).norm() < 1e-14);
    }

    #[test]
    fn projector_distance_zero_for_same_span() {
        let a = CMat::from_column_slice(2, 1, &[cx(1.), cx(1.)]) * cx(0.5f64.sqrt());
        let b = CMat::from_column_slice(2, 1, &[C64::new(0., 1.), C64::new(0., 1.)])
            * cx(0.5f64.sqrt());
        assert!(projector_distance(&a, &b) < 1e-14);
    }
}
