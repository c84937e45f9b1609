//! Relation spaces and the maps between them.

use serde::Serialize;

use crate::complex::{serde_cx, C64};
use crate::error::{Error, Result};
use crate::linalg::{
    column_rank, projector, projector_distance, residual_from_span, singular_values, CMat, MIN_GAP,
    RANK_TOL,
};

use super::params::{md, AlgebraParams};
use super::relations::{column, operator_r_diag};
use super::vector::TensorVector;

/// Columns below this fraction of the largest column norm are dropped.
const DROP_COLUMN: f64 = 1e-10;

/// A subspace of `V ⊗ V` given by generators, with an orthonormal basis and
/// numerical rank.
#[derive(Debug, Clone, Serialize)]
pub struct RelationSpace {
    pub n: usize,
    pub k: usize,
    #[serde(with = "serde_cx")]
    pub tau: C64,
    #[serde(with = "serde_cx")]
    pub eta: C64,
    pub generators: Vec<TensorVector>,
    pub rank: usize,
    pub svd_gap: f64,
    pub singular_values: Vec<f64>,
    pub seed: Option<u64>,
    #[serde(skip)]
    params: AlgebraParams,
    #[serde(skip)]
    basis: CMat,
}

impl RelationSpace {
    /// Builds the space spanned by `generators`, recorded as belonging to
    /// `params`. Each generator is scaled by its largest entry and negligible
    /// ones are dropped before the SVD.
    pub fn from_generators(
        params: &AlgebraParams,
        generators: Vec<TensorVector>,
        rel_tol: f64,
    ) -> Result<Self> {
        let n = params.n();
        let scale = generators.iter().map(|g| g.norm()).fold(0.0, f64::max);
        let kept: Vec<TensorVector> = generators
            .into_iter()
            .filter(|g| g.norm() > DROP_COLUMN * scale)
            .filter_map(|g| g.normalized_by_max())
            .collect();
        let m = CMat::from_fn(n * n, kept.len(), |r, c| kept[c].coeffs()[r]);
        let info = column_rank(&m, rel_tol);
        if info.gap < MIN_GAP {
            return Err(Error::RankAmbiguous {
                gap: info.gap,
                threshold: MIN_GAP,
            });
        }
        Ok(Self {
            n,
            k: params.k(),
            tau: params.tau(),
            eta: params.eta(),
            generators: kept,
            rank: info.rank,
            svd_gap: info.gap,
            singular_values: info.singular_values,
            seed: None,
            params: *params,
            basis: info.basis,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    /// Orthonormal basis, one column per dimension.
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<TensorVector> {
        (0..self.rank)
            .map(|c| column(&self.basis, c, self.n))
            .collect()
    }

    pub fn projector(&self) -> CMat {
        projector(&self.basis)
    }

    /// Frobenius distance between the two orthogonal projectors.
    pub fn distance(&self, other: &RelationSpace) -> f64 {
        projector_distance(&self.basis, &other.basis)
    }

    pub fn distance_to_basis(&self, other: &CMat) -> f64 {
        projector_distance(&self.basis, other)
    }

    /// Relative distance of `v` from the space.
    pub fn residual(&self, v: &TensorVector) -> f64 {
        residual_from_span(&self.basis, v.coeffs())
    }

    /// Largest relative residual of a generator from the orthonormal basis.
    pub fn max_generator_residual(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| self.residual(g))
            .fold(0.0, f64::max)
    }

    /// Largest relative residual of a generator from the span of `q`.
    pub fn max_residual_in(&self, q: &CMat) -> f64 {
        self.generators
            .iter()
            .map(|g| residual_from_span(q, g.coeffs()))
            .fold(0.0, f64::max)
    }

    /// Image under `v ↦ f(v)` applied to every generator, with the same
    /// parameters.
    pub fn map_generators(&self, f: impl Fn(&TensorVector) -> TensorVector) -> Result<Self> {
        let gens = self.generators.iter().map(f).collect();
        Ok(Self::from_generators(&self.params, gens, RANK_TOL)?.with_seed_opt(self.seed))
    }

    fn with_seed_opt(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }
}

/// `rel_{n,k}(E, tau)`: the image of `R_tau(tau)`, continued at torsion
/// points.
pub fn relation_space(p: &AlgebraParams) -> Result<RelationSpace> {
    relation_space_tol(p, RANK_TOL)
}

/// [`relation_space`] with a custom relative rank tolerance.
pub fn relation_space_tol(p: &AlgebraParams, rel_tol: f64) -> Result<RelationSpace> {
    let n = p.n();
    let m = operator_r_diag(p)?;
    let gens = (0..n * n).map(|c| column(&m, c, n)).collect();
    RelationSpace::from_generators(p, gens, rel_tol)
}

/// `(id ⊗ phi)(rel)`.
pub fn twist_quadratic(rel: &RelationSpace, phi: &CMat) -> Result<RelationSpace> {
    let n = rel.n;
    if phi.shape() != (n, n) {
        return Err(Error::InvalidParams(format!(
            "twist matrix must be {n}x{n}"
        )));
    }
    let sv = singular_values(phi);
    let (smax, smin) = sv
        .iter()
        .fold((0.0f64, f64::INFINITY), |(a, b), &s| (a.max(s), b.min(s)));
    if smax == 0.0 || smin / smax < 1e-12 {
        return Err(Error::SingularMap {
            ratio: if smax == 0.0 { 0.0 } else { smin / smax },
        });
    }
    let id = CMat::identity(n, n);
    rel.map_generators(|g| g.map2(&id, phi))
}

fn orthonormal(vectors: Vec<TensorVector>, n: usize) -> CMat {
    let m = CMat::from_fn(n * n, vectors.len(), |r, c| vectors[c].coeffs()[r]);
    column_rank(&m, RANK_TOL).basis
}

/// Orthonormal basis of `span{[x_a, x_b]}` (= `Alt^2 V`).
pub fn commutator_space(n: usize) -> CMat {
    alt2_basis(n)
}

pub fn alt2_basis(n: usize) -> CMat {
    let v = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| TensorVector::commutator(n, a, b)))
        .collect();
    orthonormal(v, n)
}

/// Orthonormal basis of `span{x_a x_b + x_b x_a}`.
pub fn sym2_basis(n: usize) -> CMat {
    let v = (0..n)
        .flat_map(|a| (a..n).map(move |b| TensorVector::anticommutator(n, a, b)))
        .collect();
    orthonormal(v, n)
}

#[derive(Debug, Clone, Serialize)]
pub struct KPrimeCandidate {
    /// The multiplier `m` of the substitution `x_i ↦ x_{m i}`.
    pub multiplier: usize,
    /// `"k"` or `"k_prime"`.
    pub label: &'static str,
    pub distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct KPrimeReport {
    pub target: RelationSpace,
    pub candidates: Vec<KPrimeCandidate>,
}

impl KPrimeReport {
    pub fn best(&self) -> &KPrimeCandidate {
        self.candidates
            .iter()
            .min_by(|a, b| a.distance.total_cmp(&b.distance))
            .expect("two candidates")
    }
}

/// Test both substitutions `x_i ↦ x_{k i}` and `x_i ↦ x_{k' i}` as maps
/// `rel_{n,k} -> rel_{n,k'}`.
pub fn map_k_kprime(rel: &RelationSpace) -> Result<KPrimeReport> {
    let p = rel.params();
    let n = p.n();
    let target = relation_space(&p.with_k(p.k_prime())?)?;
    let mut candidates = Vec::new();
    for (multiplier, label) in [(p.k(), "k"), (p.k_prime(), "k_prime")] {
        let sigma: Vec<usize> = (0..n).map(|i| (multiplier * i) % n).collect();
        let image = rel.map_generators(|g| g.permute(&sigma))?;
        candidates.push(KPrimeCandidate {
            multiplier,
            label,
            distance: image.distance(&target),
        });
    }
    Ok(KPrimeReport { target, candidates })
}

#[derive(Debug, Clone, Serialize)]
pub struct NegationReport {
    /// `rel(-tau)`.
    pub target: RelationSpace,
    /// `(N ⊗ N)(rel)` with `N(x_a) = x_{-a}`.
    pub negated: RelationSpace,
    /// Factor-swap image of `rel`.
    pub swapped: RelationSpace,
    pub negated_distance: f64,
    pub swapped_distance: f64,
}

pub fn negation_map(rel: &RelationSpace) -> Result<NegationReport> {
    let p = rel.params();
    let n = p.n();
    let target = relation_space(&p.with_tau(-p.tau()))?;
    let sigma: Vec<usize> = (0..n as i64).map(|a| md(-a, n)).collect();
    let negated = rel.map_generators(|g| g.permute(&sigma))?;
    let swapped = rel.map_generators(|g| g.swap())?;
    Ok(NegationReport {
        negated_distance: negated.distance(&target),
        swapped_distance: swapped.distance(&target),
        target,
        negated,
        swapped,
    })
}
