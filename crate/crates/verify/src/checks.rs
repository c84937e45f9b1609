//! The registry of named checks. Every check is a pure function of the
//! [`RunConfig`] and fills a [`Metrics`] table.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use qnk_core::complex::e_real;
use qnk_core::contour::{count_zeros, ContourOptions, FundamentalParallelogram};
use qnk_core::hilbert::{graded_dims, GradedDims};
use qnk_core::lattice;
use qnk_core::linalg::column_rank;
use qnk_core::sampling::{box_point, GenericTauSampler};
use qnk_core::shuffle::{
    alt_identity_sides, h_ij, psi_map, star_general, star_product, tensor_image, SymFunction,
};
use qnk_core::tensor::{
    alt2_basis, alt_relations, commutator_space, heisenberg_matrix, line_limit, map_k_kprime,
    negation_map, operator_r_diag_continued, relation_r_ij, relation_space_tol, sym2_basis,
    tau_zero_combination, twist_quadratic, AlgebraParams, HeisenbergElement, RelationSpace,
    CONTINUATION_POINTS,
};
use qnk_core::theta::{act_s, act_t, quasi_periodicity_defect, theta_alpha};
use qnk_core::{LatticeData, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::check::{status_of, CheckParams, CheckResult, Metrics, Status};
use crate::config::RunConfig;
use crate::error::{Result, VerifyError};

type CheckFn = fn(&Ctx, &mut Metrics) -> Result<()>;

pub struct CheckSpec {
    pub id: &'static str,
    pub summary: &'static str,
    /// Whether the check draws `tau_samples` parameters; with zero samples it
    /// is reported as ambiguous.
    pub sampled: bool,
    run: CheckFn,
}

macro_rules! check {
    ($id:literal, $summary:literal, $sampled:literal, $run:path) => {
        CheckSpec {
            id: $id,
            summary: $summary,
            sampled: $sampled,
            run: $run,
        }
    };
}

pub static REGISTRY: [CheckSpec; 18] = [
    check!(
        "theta-quasiperiod",
        "theta_alpha transforms correctly under z+1 and z+eta",
        true,
        theta_quasiperiod
    ),
    check!(
        "theta-zeros-appendix",
        "contour integrals count n zeros of theta_alpha summing to (n-1)/2",
        false,
        theta_zeros
    ),
    check!(
        "heisenberg-rep",
        "S, T satisfy the Heisenberg relations and act on the theta basis",
        true,
        heisenberg_rep
    ),
    check!(
        "rel-dim",
        "the relation space has dimension n(n-1)/2 at generic tau",
        true,
        rel_dim
    ),
    check!(
        "rel-torsion-limit",
        "continued R_tau(tau) is stable across radii with full rank at torsion points",
        false,
        rel_torsion_limit
    ),
    check!(
        "twist-thm",
        "translating tau by (1/n)Lambda twists the relations by a Heisenberg element",
        true,
        twist_thm
    ),
    check!(
        "k-kprime-iso",
        "a coordinate substitution carries rel_{n,k} onto rel_{n,k'}",
        true,
        k_kprime_iso
    ),
    check!(
        "op-algebra",
        "negation and factor swap both carry rel(tau) onto rel(-tau)",
        true,
        op_algebra
    ),
    check!(
        "alt-relations",
        "the alternative relations R_ij, R'_ij span the relation space",
        true,
        alt_relations_check
    ),
    check!(
        "hilbert-poly",
        "graded dimensions at tau = 0 are those of a polynomial ring",
        false,
        hilbert_poly
    ),
    check!(
        "hilbert-generic",
        "graded dimensions at generic tau are those of a polynomial ring",
        true,
        hilbert_generic
    ),
    check!(
        "tau-zero-poly",
        "at tau = 0 the relations are the commutators",
        false,
        tau_zero_poly
    ),
    check!(
        "n-minus-one-alt",
        "for k = n-1 all relations are antisymmetric",
        true,
        n_minus_one_alt
    ),
    check!(
        "two-torsion",
        "relations at two-torsion points are symmetric (odd n) or commutators (even n)",
        false,
        two_torsion
    ),
    check!(
        "shuffle-hom",
        "relations map to zero under the shuffle product",
        true,
        shuffle_hom
    ),
    check!(
        "shuffle-assoc",
        "the shuffle product is associative in degree (1,1,1)",
        true,
        shuffle_assoc
    ),
    check!(
        "psi-identity",
        "the antisymmetric theta identity and psi(f_ij) = h_ij hold pointwise",
        true,
        psi_identity
    ),
    check!(
        "samerank-k-nk",
        "rel_{n,k} and rel_{n,n-k} have equal rank",
        true,
        samerank
    ),
];

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|c| c.id)
}

pub fn find(id: &str) -> Result<&'static CheckSpec> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

/// Run one check. Numerical errors and panics become a failed result; only an
/// unknown id or an invalid configuration is an `Err`.
pub fn run_check(id: &str, cfg: &RunConfig) -> Result<CheckResult> {
    cfg.validate()?;
    let spec = find(id)?;
    let index = REGISTRY
        .iter()
        .position(|c| c.id == id)
        .expect("found above");
    Ok(execute(spec, index, cfg))
}

/// Run every registered check on up to `cfg.workers` threads. Results come
/// back in registry order.
pub fn run_all(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| VerifyError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        REGISTRY
            .par_iter()
            .enumerate()
            .map(|(index, spec)| execute(spec, index, cfg))
            .collect()
    }))
}

fn execute(spec: &CheckSpec, index: usize, cfg: &RunConfig) -> CheckResult {
    let start = Instant::now();
    let ctx = Ctx {
        cfg,
        seed: cfg.seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15),
    };
    let mut metrics = Metrics::default();
    let outcome = catch_unwind(AssertUnwindSafe(|| (spec.run)(&ctx, &mut metrics)));
    let error = match outcome {
        Ok(Ok(())) => None,
        Ok(Err(e)) => Some(e.to_string()),
        Err(panic) => Some(panic_message(panic)),
    };
    let vacuous = spec.sampled && cfg.tau_samples == 0;
    let map = metrics.into_map();
    let status = if error.is_some() {
        Status::Fail
    } else if vacuous {
        Status::Ambiguous
    } else {
        status_of(&map)
    };
    CheckResult {
        check_id: spec.id.to_string(),
        params: CheckParams {
            seed: cfg.seed,
            eta: cfg.eta,
            pairs: cfg.pairs.clone(),
            tau_samples: cfg.tau_samples,
        },
        status,
        metrics: map,
        error,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

fn panic_message(panic: Box<dyn std::any::Any + Send>) -> String {
    let text = panic
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| panic.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into());
    format!("panic: {text}")
}

/// Per-check view of the configuration with a derived seed.
struct Ctx<'a> {
    cfg: &'a RunConfig,
    seed: u64,
}

impl Ctx<'_> {
    fn lat(&self, n: usize) -> Result<LatticeData> {
        Ok(LatticeData::with_order(self.cfg.eta, n)?)
    }

    fn params(&self, n: usize, k: usize, tau: C64) -> Result<AlgebraParams> {
        Ok(AlgebraParams::with_lattice(n, k, tau, self.lat(n)?)?)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.seed
                .wrapping_add(salt.wrapping_mul(0x2545_f491_4f6c_dd1d)),
        )
    }

    /// `tau_samples` generic parameters for order `n`.
    fn taus(&self, n: usize, salt: u64) -> Result<Vec<C64>> {
        let sampler = GenericTauSampler::from_rng(self.lat(n)?, self.rng(salt));
        Ok(sampler.take(self.cfg.tau_samples).collect())
    }

    fn space(&self, p: &AlgebraParams) -> Result<RelationSpace> {
        Ok(relation_space_tol(p, self.cfg.tolerances.rank)?)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cfg.pairs.iter().copied()
    }

    fn pair_salt(n: usize, k: usize) -> u64 {
        (n * 16 + k) as u64
    }
}

fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn point(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.4..0.4))
}

fn theta_quasiperiod(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = ctx.cfg.tolerances.equivariance;
    for n in ctx.cfg.orders() {
        let lat = ctx.lat(n)?;
        let mut rng = ctx.rng(n as u64);
        for _ in 0..ctx.cfg.tau_samples {
            let z = box_point(&mut rng, &lat, 0.5);
            for a in 0..n as i64 {
                let f = |w| Ok(theta_alpha(a, w, &lat)?.value);
                let (d1, d2) = quasi_periodicity_defect(f, z, &lat)?;
                let scale = f(z)?.norm().max(f(z + lat.eta())?.norm()).max(1.0);
                m.at_most("max_relative_defect", d1.max(d2) / scale, tol);
            }
            m.sampled();
        }
    }
    Ok(())
}

fn theta_zeros(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = &ctx.cfg.tolerances;
    let opts = ContourOptions::default();
    let max_n = ctx.cfg.orders().into_iter().max().unwrap_or(1);
    let mut rng = ctx.rng(0);
    for n in 1..=max_n {
        let lat = ctx.lat(n)?;
        let expected = C64::new((n as f64 - 1.0) / 2.0, 0.0);
        for a in 0..n as i64 {
            let mut found = None;
            // The base is redrawn until no zero lies on the contour.
            for _ in 0..64 {
                let base = lat.point(rng.gen(), rng.gen());
                let cell = FundamentalParallelogram::standard(base, lat.eta())?;
                match count_zeros(|z| Ok(theta_alpha(a, z, &lat)?.value), &cell, &opts) {
                    Ok(r) => {
                        found = Some(r);
                        break;
                    }
                    Err(
                        qnk_core::Error::ZeroOnBoundary { .. } | qnk_core::Error::NonInteger { .. },
                    ) => continue,
                    Err(e) => return Err(e.into()),
                }
            }
            let r =
                found.ok_or_else(|| VerifyError::Config("no zero-free contour found".into()))?;
            m.count("count_mismatches", usize::from(r.count != n as i64));
            m.at_most("max_winding_residual", r.residual, tol.winding);
            let err = lattice::distance(r.zero_sum - expected, C64::new(1.0, 0.0), lat.eta());
            m.at_most("max_zero_sum_error", err, tol.zero_sum);
        }
    }
    Ok(())
}

fn heisenberg_rep(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = ctx.cfg.tolerances.equivariance;
    for n in ctx.cfg.orders() {
        let s = HeisenbergElement::s(n).matrix();
        let t = HeisenbergElement::t(n).matrix();
        let w = e_real(1.0 / n as f64);
        m.at_most("commutation_defect", (&s * &t - &t * &s * w).norm(), tol);
        let mut rng = ctx.rng(n as u64);
        for _ in 0..ctx.cfg.tau_samples {
            let g = HeisenbergElement::new(
                n,
                rng.gen_range(0..n as i64),
                rng.gen_range(0..n as i64),
                rng.gen_range(0..n as i64),
            );
            let h = HeisenbergElement::new(
                n,
                rng.gen_range(0..n as i64),
                rng.gen_range(0..n as i64),
                rng.gen_range(0..n as i64),
            );
            let product = g.compose(&h).matrix() - g.matrix() * h.matrix();
            m.at_most("composition_defect", product.norm(), tol);
            let kron = heisenberg_matrix(&g, 2) - g.matrix().kronecker(&g.matrix());
            m.at_most("kronecker_defect", kron.norm(), tol);
            let lat = ctx.lat(n)?;
            let z = box_point(&mut rng, &lat, 0.4);
            for a in 0..n as i64 {
                let f = |u| Ok(theta_alpha(a, u, &lat)?.value);
                let base = f(z)?;
                let sv = act_s(f, z, &lat)?;
                let tv = act_t(f, z, &lat)?;
                let scale = base.norm().max(1.0);
                m.at_most(
                    "s_eigen_defect",
                    (sv - e_real(a as f64 / n as f64) * base).norm() / scale,
                    tol,
                );
                let next = theta_alpha(a + 1, z, &lat)?.value;
                m.at_most(
                    "t_shift_defect",
                    (tv - next).norm() / next.norm().max(1.0),
                    tol,
                );
            }
            m.sampled();
        }
    }
    Ok(())
}

fn rel_dim(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for (n, k) in ctx.pairs() {
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))? {
            let rel = ctx.space(&ctx.params(n, k, tau)?)?;
            m.count("rank_mismatches", usize::from(rel.rank != n * (n - 1) / 2));
            m.at_least("min_svd_gap", rel.svd_gap, ctx.cfg.tolerances.svd_gap);
            m.sampled();
        }
    }
    Ok(())
}

fn rel_torsion_limit(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = &ctx.cfg.tolerances;
    for (n, k) in ctx.pairs() {
        let nf = n as f64;
        for a in 0..n {
            for b in 0..n {
                let tau = C64::new(a as f64 / nf, 0.0) + ctx.cfg.eta * (b as f64 / nf);
                let p = ctx.params(n, k, tau)?;
                let m1 = operator_r_diag_continued(&p, 1e-3, CONTINUATION_POINTS)?;
                let m2 = operator_r_diag_continued(&p, 1e-4, CONTINUATION_POINTS)?;
                let scale = m1.iter().map(|x| x.norm()).fold(0.0, f64::max);
                let diff = m1
                    .iter()
                    .zip(m2.iter())
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                m.at_most("max_radius_disagreement", diff / scale, tol.continuation);
                m.count(
                    "rank_mismatches",
                    usize::from(column_rank(&m1, tol.rank).rank != n * (n - 1) / 2),
                );
            }
        }
    }
    Ok(())
}

fn twist_thm(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for (n, k) in ctx.pairs().filter(|&(n, _)| n <= 5) {
        let (s, t) = (HeisenbergElement::s(n), HeisenbergElement::t(n));
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))?.into_iter().take(2) {
            let p = ctx.params(n, k, tau)?;
            let base = ctx.space(&p)?;
            let (ki, kp) = (k as i64, p.k_prime() as i64);
            let nf = n as f64;
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    let shift = C64::new(a as f64 / nf, 0.0) + ctx.cfg.eta * (b as f64 / nf);
                    let target = ctx.space(&p.with_tau(tau + shift))?;
                    let g = t.pow(-(kp + 1) * b).compose(&s.pow(-(ki + 1) * a));
                    let d = twist_quadratic(&base, &g.matrix())?.distance(&target);
                    m.at_most("max_projector_distance", d, ctx.cfg.tolerances.subspace);
                }
            }
            m.sampled();
        }
    }
    Ok(())
}

fn k_kprime_iso(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = ctx.cfg.tolerances.subspace;
    let mut by_k = 0.0f64;
    let mut by_kp = 0.0f64;
    for (n, k) in ctx.pairs() {
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))? {
            let report = map_k_kprime(&ctx.space(&ctx.params(n, k, tau)?)?)?;
            m.at_most("max_best_distance", report.best().distance, tol);
            for c in &report.candidates {
                match c.label {
                    "k" => by_k = by_k.max(c.distance),
                    _ => by_kp = by_kp.max(c.distance),
                }
            }
            m.sampled();
        }
    }
    if m.samples() > 0 {
        m.observe("max_distance_multiplier_k", by_k);
        m.observe("max_distance_multiplier_k_prime", by_kp);
    }
    Ok(())
}

fn op_algebra(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = ctx.cfg.tolerances.subspace;
    for (n, k) in ctx.pairs() {
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))? {
            let rep = negation_map(&ctx.space(&ctx.params(n, k, tau)?)?)?;
            m.at_most("max_negation_distance", rep.negated_distance, tol);
            m.at_most("max_swap_distance", rep.swapped_distance, tol);
            m.sampled();
        }
    }
    Ok(())
}

fn alt_relations_check(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = &ctx.cfg.tolerances;
    for (n, k) in ctx.pairs() {
        let s = HeisenbergElement::s(n).matrix();
        let t = HeisenbergElement::t(n).matrix();
        let w = e_real(1.0 / n as f64);
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))?.into_iter().take(3) {
            let p = ctx.params(n, k, tau)?;
            let alt = alt_relations(&p)?;
            let rel = ctx.space(&p)?;
            for i in 0..n {
                for j in 0..n {
                    let r = &alt.r[i * n + j];
                    let scale = r.norm().max(f64::MIN_POSITIVE);
                    let eig = r.map2(&s, &s).sub(&r.scale(w.powi(2 * j as i32)));
                    m.at_most("max_eigen_defect", eig.norm() / scale, tol.equivariance);
                    let shifted = &alt.r[i * n + (j + 1) % n];
                    m.at_most(
                        "max_shift_defect",
                        r.map2(&t, &t).sub(shifted).norm() / scale,
                        tol.equivariance,
                    );
                    if n % 2 == 0 {
                        let h = n / 2;
                        let opposite = &alt.r[((i + h) % n) * n + (j + h) % n];
                        m.at_most(
                            "max_half_shift_negation_defect",
                            opposite.scale(C64::new(-1.0, 0.0)).sub(r).norm() / scale,
                            tol.equivariance,
                        );
                    }
                }
            }
            let both: Vec<_> = alt.r.iter().chain(&alt.r_prime).cloned().collect();
            let union = RelationSpace::from_generators(&p, both, tol.rank)?;
            m.at_most("max_union_distance", union.distance(&rel), tol.subspace);
            if n % 2 == 1 {
                let r = RelationSpace::from_generators(&p, alt.r.clone(), tol.rank)?;
                let rp = RelationSpace::from_generators(&p, alt.r_prime.clone(), tol.rank)?;
                m.at_most(
                    "max_single_family_distance",
                    r.distance(&rel).max(rp.distance(&rel)),
                    tol.subspace,
                );
            }
            m.sampled();
        }
    }
    Ok(())
}

/// Degree cap keeping `n^d` within the default Hilbert column budget.
fn hilbert_degree(n: usize) -> usize {
    if n <= 5 {
        4
    } else {
        3
    }
}

fn compare_dims(m: &mut Metrics, got: &GradedDims, n: usize) {
    let expected = GradedDims::polynomial(n, got.d_max());
    let wrong = got
        .dims
        .iter()
        .zip(&expected.dims)
        .filter(|(a, b)| a != b)
        .count();
    m.count("dimension_mismatches", wrong);
}

fn hilbert_poly(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for (n, k) in ctx.pairs() {
        let rel = ctx.space(&ctx.params(n, k, C64::new(0.0, 0.0))?)?;
        compare_dims(m, &graded_dims(&rel, hilbert_degree(n))?, n);
    }
    Ok(())
}

fn hilbert_generic(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for (n, k) in ctx.pairs() {
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))?.into_iter().take(2) {
            let rel = ctx.space(&ctx.params(n, k, tau)?)?;
            compare_dims(m, &graded_dims(&rel, hilbert_degree(n))?, n);
            m.sampled();
        }
    }
    Ok(())
}

fn tau_zero_poly(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = &ctx.cfg.tolerances;
    for (n, k) in ctx.pairs() {
        let p = ctx.params(n, k, C64::new(0.0, 0.0))?;
        let rel = ctx.space(&p)?;
        m.at_most(
            "max_commutator_distance",
            rel.distance_to_basis(&commutator_space(n)),
            tol.subspace,
        );
        for i in 0..n {
            match line_limit(&p, i, i)? {
                Some(v) => {
                    let d = v.line_distance(&tau_zero_combination(&p, i)?);
                    m.at_most("max_diagonal_line_distance", d, tol.residual);
                }
                None => m.count("unexpected_vanishing_lines", usize::from(k != 1)),
            }
        }
    }
    Ok(())
}

fn n_minus_one_alt(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for n in ctx.cfg.orders() {
        for tau in ctx.taus(n, n as u64)? {
            let rel = ctx.space(&ctx.params(n, n - 1, tau)?)?;
            m.at_most(
                "max_alt2_residual",
                rel.max_residual_in(&alt2_basis(n)),
                ctx.cfg.tolerances.residual,
            );
            m.sampled();
        }
    }
    Ok(())
}

fn two_torsion(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = &ctx.cfg.tolerances;
    let eta = ctx.cfg.eta;
    let halves = [C64::new(0.5, 0.0), eta * 0.5, (eta + 1.0) * 0.5];
    for n in ctx.cfg.orders() {
        for tau in halves {
            let rel = ctx.space(&ctx.params(n, 1, tau)?)?;
            if n % 2 == 1 {
                m.at_most(
                    "max_symmetric_residual",
                    rel.max_residual_in(&sym2_basis(n)),
                    tol.residual,
                );
            } else {
                m.at_most(
                    "max_commutator_distance",
                    rel.distance_to_basis(&commutator_space(n)),
                    tol.subspace,
                );
            }
        }
    }
    Ok(())
}

/// Orders with `k = 1` the shuffle checks use.
fn shuffle_orders(ctx: &Ctx) -> Vec<usize> {
    ctx.cfg.orders().into_iter().filter(|&n| n <= 5).collect()
}

fn shuffle_hom(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for n in shuffle_orders(ctx) {
        let mut rng = ctx.rng(n as u64);
        for tau in ctx.taus(n, n as u64)? {
            let p = ctx.params(n, 1, tau)?;
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    let r = relation_r_ij(&p, i, j)?;
                    let (v, scale) = tensor_image(&r, &p, point(&mut rng), point(&mut rng))?;
                    m.at_most(
                        "max_relative_image",
                        v.norm() / scale,
                        ctx.cfg.tolerances.identity,
                    );
                }
            }
            m.sampled();
        }
    }
    Ok(())
}

fn shuffle_assoc(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for n in shuffle_orders(ctx) {
        let mut rng = ctx.rng(n as u64);
        for tau in ctx.taus(n, n as u64)? {
            let p = ctx.params(n, 1, tau)?;
            let [f, g, h] = [0; 3].map(|_| SymFunction::theta(n, rng.gen_range(0..n as i64)));
            let fg = star_product(&f, &g, &p)?;
            let gh = star_product(&g, &h, &p)?;
            let z = [point(&mut rng), point(&mut rng), point(&mut rng)];
            let d = rel_err(
                star_general(&fg, &h, &p, &z)?,
                star_general(&f, &gh, &p, &z)?,
            );
            m.at_most("max_associativity_error", d, ctx.cfg.tolerances.identity);
            m.sampled();
        }
    }
    Ok(())
}

fn psi_identity(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    let tol = ctx.cfg.tolerances.identity;
    for n in shuffle_orders(ctx) {
        let mut rng = ctx.rng(n as u64);
        for tau in ctx.taus(n, n as u64)? {
            let p = ctx.params(n, 1, tau)?;
            let i = rng.gen_range(0..n as i64);
            let j = (i + rng.gen_range(1..n as i64)) % n as i64;
            let (x, y) = (point(&mut rng), point(&mut rng));
            let (lhs, rhs) = alt_identity_sides(i, j, &p, x, y)?;
            m.at_most("max_identity_error", rel_err(lhs, rhs), tol);
            let d = rel_err(psi_map(i, j, &p, x, y)?, h_ij(i, j, &p, x, y)?);
            m.at_most("max_psi_error", d, tol);
            m.sampled();
        }
    }
    Ok(())
}

fn samerank(ctx: &Ctx, m: &mut Metrics) -> Result<()> {
    for (n, k) in ctx.pairs() {
        for tau in ctx.taus(n, Ctx::pair_salt(n, k))? {
            let a = ctx.space(&ctx.params(n, k, tau)?)?;
            let b = ctx.space(&ctx.params(n, n - k, tau)?)?;
            m.count("rank_differences", usize::from(a.rank != b.rank));
            m.sampled();
        }
    }
    Ok(())
}
