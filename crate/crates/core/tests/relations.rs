mod common;

use common::{c, coprime_pairs, relation_oracle};
use proptest::prelude::*;
use qnk_core::linalg::column_rank;
use qnk_core::sampling::{is_generic, GenericTauSampler};
use qnk_core::tensor::{
    alt2_basis, alt_relations, commutator_space, heisenberg_matrix, is_identically_zero,
    line_limit, map_k_kprime, negation_map, odd_variant_plain, odd_variant_psi,
    odd_variant_twisted, operator_r, operator_r_diag, operator_r_diag_continued, relation_r_ij,
    relation_space, sym2_basis, tau_zero_combination, twist_quadratic, AlgebraParams,
    HeisenbergElement, RelationSpace, TensorVector,
};
use qnk_core::theta::theta_alpha;
use qnk_core::{Error, LatticeData, C64};

const ETA: C64 = C64::new(0.0, 1.0);

fn params(n: usize, k: usize, tau: C64) -> AlgebraParams {
    AlgebraParams::new(n, k, tau, ETA).unwrap()
}

fn generic_taus(n: usize, seed: u64, count: usize) -> Vec<C64> {
    GenericTauSampler::new(LatticeData::with_order(ETA, n).unwrap(), seed)
        .take(count)
        .collect()
}

fn space_from(n: usize, k: usize, gens: Vec<TensorVector>) -> RelationSpace {
    RelationSpace::from_generators(&params(n, k, c(0.0, 0.0)), gens, 1e-8).unwrap()
}

// Coefficients of r_01 for n = 3, k = 1, tau = 0.123 + 0.234i, eta = i, from
// product-formula thetas. Index a n + b for x_a ⊗ x_b; other entries vanish.
const R01_PINNED: [(usize, f64, f64); 3] = [
    (1, -8.673_756_982_786_609e-4, -5.258_123_941_342_109e-2),
    (3, 1.602_636_377_857_486_7e-1, 1.295_844_855_417_609_4e-1),
    (8, -1.107_278_411_748_647e-1, 1.132_379_998_267_985_3e-2),
];

#[test]
fn pinned_r01() {
    let tau = c(0.123, 0.234);
    let v = relation_r_ij(&params(3, 1, tau), 0, 1).unwrap();
    let mut expect = vec![c(0.0, 0.0); 9];
    for (idx, re, im) in R01_PINNED {
        expect[idx] = c(re, im);
    }
    for (got, want) in v.coeffs().iter().zip(&expect) {
        assert!((got - want).norm() < 1e-13, "{got} vs {want}");
    }
    let oracle = relation_oracle(3, 1, 0, 1, tau, ETA);
    for (got, want) in v.coeffs().iter().zip(&oracle) {
        assert!((got - want).norm() < 1e-13);
    }
}

#[test]
fn relations_match_oracle_for_all_pairs() {
    for (n, k) in coprime_pairs(6) {
        let tau = generic_taus(n, 7 + n as u64, 1)[0];
        let p = params(n, k, tau);
        for i in 0..n {
            for j in 0..n {
                let v = relation_r_ij(&p, i, j).unwrap();
                let o = relation_oracle(n, k, i, j, tau, ETA);
                let scale = o.iter().map(|x| x.norm()).fold(1e-300, f64::max);
                for (a, b) in v.coeffs().iter().zip(&o) {
                    assert!(
                        (a - b).norm() < 1e-12 + 1e-10 * scale,
                        "n={n} k={k} ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn n2_relation_is_a_commutator() {
    let p = params(2, 1, c(0.31, 0.27));
    let v = relation_r_ij(&p, 0, 1).unwrap();
    assert!(v.line_distance(&TensorVector::commutator(2, 0, 1)) < 1e-12);
    let lat = p.lat();
    let th = |a, z| theta_alpha(a, z, lat).unwrap().value;
    let t = p.tau();
    let expect = -th(1, c(0.0, 0.0)) / (qnk_core::e(-t * 2.0) * th(0, t) * th(1, t));
    assert!((v.get2(0, 1) - expect).norm() < 1e-10 * expect.norm());
}

#[test]
fn diagonal_relations_vanish_for_k1() {
    for n in 2..=6 {
        let p = params(n, 1, generic_taus(n, 3, 1)[0]);
        for i in 0..n {
            assert!(relation_r_ij(&p, i, i).unwrap().norm() < 1e-12);
            assert!(is_identically_zero(&p, i, i, 11).unwrap());
        }
        assert!(!is_identically_zero(&p, 0, 1, 11).unwrap());
    }
}

#[test]
fn torsion_point_is_rejected_by_direct_evaluation() {
    let p = params(3, 1, ETA * (1.0 / 3.0));
    assert!(matches!(
        relation_r_ij(&p, 0, 1),
        Err(Error::TorsionPoint { .. })
    ));
    assert!(matches!(
        operator_r(&p, c(0.1, 0.0)),
        Err(Error::TorsionPoint { .. })
    ));
}

#[test]
fn operator_r_identity_and_columns() {
    for (n, k) in [(2, 1), (3, 1), (4, 3), (5, 2), (6, 5)] {
        let p = params(n, k, generic_taus(n, 21, 1)[0]);
        let id = operator_r(&p, c(0.0, 0.0)).unwrap();
        let dim = n * n;
        for r in 0..dim {
            for s in 0..dim {
                let want = if r == s { 1.0 } else { 0.0 };
                assert!((id[(r, s)] - want).norm() < 1e-9, "n={n} k={k}");
            }
        }
        let diag = operator_r(&p, p.tau()).unwrap();
        let d2 = operator_r_diag(&p).unwrap();
        assert!((&diag - &d2).norm() < 1e-10 * diag.norm());
        for i in 0..n {
            for j in 0..n {
                let col: Vec<C64> = diag.column(i * n + j).iter().copied().collect();
                let col = TensorVector::from_coeffs(n, 2, col).unwrap();
                let r = relation_r_ij(&p, i, j).unwrap();
                if r.norm() < 1e-12 {
                    assert!(col.norm() < 1e-9 * diag.norm());
                } else {
                    assert!(col.line_distance(&r) < 1e-9, "n={n} k={k} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn operator_r_mean_value() {
    let p = params(3, 2, c(0.21, 0.37));
    let z0 = c(0.13, 0.08);
    let center = operator_r(&p, z0).unwrap();
    let mut mean = center.clone() * c(0.0, 0.0);
    for m in 0..8 {
        mean += operator_r(&p, z0 + qnk_core::complex::e_real(m as f64 / 8.0) * 1e-3).unwrap();
    }
    mean /= c(8.0, 0.0);
    assert!((&mean - &center).norm() < 1e-8 * center.norm());
}

#[test]
fn rank_is_n_choose_2() {
    for (n, k) in coprime_pairs(6) {
        for tau in generic_taus(n, 100 + n as u64 * 10 + k as u64, 3) {
            let rel = relation_space(&params(n, k, tau)).unwrap();
            assert_eq!(rel.rank, n * (n - 1) / 2, "n={n} k={k} tau={tau}");
            assert!(rel.svd_gap > 1e4);
        }
    }
}

#[test]
fn n2_any_tau_is_commutative() {
    for tau in [c(0.0, 0.0), c(0.5, 0.0), c(0.37, 0.61), ETA * 0.5] {
        let rel = relation_space(&params(2, 1, tau)).unwrap();
        assert!(
            rel.distance_to_basis(&commutator_space(2)) < 1e-7,
            "tau={tau}"
        );
    }
}

#[test]
fn tau_zero_is_polynomial() {
    for (n, k) in coprime_pairs(6) {
        let rel = relation_space(&params(n, k, c(0.0, 0.0))).unwrap();
        assert!(
            rel.distance_to_basis(&commutator_space(n)) < 1e-7,
            "n={n} k={k}"
        );
    }
}

#[test]
fn tau_zero_line_limits() {
    for (n, k) in coprime_pairs(6) {
        let p = params(n, k, c(0.0, 0.0));
        for i in 0..n {
            match line_limit(&p, i, i).unwrap() {
                None => assert_eq!(k, 1, "n={n} k={k} i={i}"),
                Some(v) => {
                    let w = tau_zero_combination(&p, i).unwrap();
                    assert!(v.line_distance(&w) < 1e-8, "n={n} k={k} i={i}");
                }
            }
            for j in 0..n {
                if i != j {
                    let v = line_limit(&p, i, j).unwrap().expect("off-diagonal line");
                    let w = TensorVector::commutator(n, j, i);
                    assert!(v.line_distance(&w) < 1e-8, "n={n} k={k} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn continuation_agrees_across_radii() {
    let p = params(3, 1, ETA * (1.0 / 3.0));
    let a = operator_r_diag_continued(&p, 1e-3, 8).unwrap();
    let b = operator_r_diag_continued(&p, 1e-4, 8).unwrap();
    let scale = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    for (x, y) in a.iter().zip(b.iter()) {
        assert!((x - y).norm() < 1e-8 * scale);
    }
    assert_eq!(column_rank(&a, 1e-8).rank, 3);
}

#[test]
fn twist_by_torsion_translation() {
    for (n, k) in [(3, 1), (4, 3), (5, 2), (5, 3)] {
        let p = params(n, k, generic_taus(n, 5, 1)[0]);
        let base = relation_space(&p).unwrap();
        let kp = p.k_prime() as i64;
        let s = HeisenbergElement::s(n);
        let t = HeisenbergElement::t(n);
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                let shifted =
                    p.with_tau(p.tau() + a as f64 / n as f64 + ETA * (b as f64 / n as f64));
                let target = relation_space(&shifted).unwrap();
                let g = t.pow(-(kp + 1) * b).compose(&s.pow(-(k as i64 + 1) * a));
                let tw = twist_quadratic(&base, &g.matrix()).unwrap();
                assert!(tw.distance(&target) < 1e-7, "n={n} k={k} a={a} b={b}");
            }
        }
    }
}

#[test]
fn k_multiplier_realizes_isomorphism() {
    for (n, k) in coprime_pairs(6) {
        for tau in generic_taus(n, 40, 2) {
            let report = map_k_kprime(&relation_space(&params(n, k, tau)).unwrap()).unwrap();
            let by_k = report.candidates.iter().find(|c| c.label == "k").unwrap();
            assert!(by_k.distance < 1e-7, "n={n} k={k}");
        }
    }
}

#[test]
fn k_prime_multiplier_fails_for_n5() {
    let report = map_k_kprime(&relation_space(&params(5, 2, c(0.21, 0.43))).unwrap()).unwrap();
    let by_kp = report
        .candidates
        .iter()
        .find(|c| c.label == "k_prime")
        .unwrap();
    assert!(by_kp.distance > 0.1);
}

#[test]
fn self_dual_k_maps_to_itself() {
    let rel = relation_space(&params(3, 2, c(0.21, 0.43))).unwrap();
    let report = map_k_kprime(&rel).unwrap();
    assert!(report.best().distance < 1e-8);
    assert!(report.target.distance(&rel) < 1e-8);
}

#[test]
fn k_multiplier_at_tau_zero() {
    let rel = relation_space(&params(5, 2, c(0.0, 0.0))).unwrap();
    let report = map_k_kprime(&rel).unwrap();
    assert!(report.candidates.iter().all(|c| c.distance < 1e-7));
}

#[test]
fn negation_matches_minus_tau() {
    for (n, k) in coprime_pairs(6) {
        let tau = generic_taus(n, 60, 1)[0];
        let rep = negation_map(&relation_space(&params(n, k, tau)).unwrap()).unwrap();
        assert!(rep.negated_distance < 1e-7, "n={n} k={k}");
        assert!(rep.swapped_distance < 1e-7, "n={n} k={k}");
    }
    let rep = negation_map(&relation_space(&params(4, 1, c(0.0, 0.0))).unwrap()).unwrap();
    assert!(rep.negated.distance_to_basis(&commutator_space(4)) < 1e-7);
    assert!(rep.swapped.distance_to_basis(&commutator_space(4)) < 1e-7);
}

#[test]
fn heisenberg_action_on_relations() {
    for (n, k) in [(3, 1), (4, 1), (5, 3), (6, 5)] {
        let p = params(n, k, generic_taus(n, 9, 1)[0]);
        let ss = heisenberg_matrix(&HeisenbergElement::s(n), 2);
        let tt = heisenberg_matrix(&HeisenbergElement::t(n), 2);
        let w = qnk_core::complex::e_real(1.0 / n as f64);
        for i in 0..n {
            for j in 0..n {
                let r = relation_r_ij(&p, i, j).unwrap();
                let sr = r.map2(&ss_factor(n), &ss_factor(n));
                let eig = r.scale(w.powi((i + j) as i32));
                assert!(sr.sub(&eig).norm() < 1e-9 * r.norm().max(1e-300));
                let tr = TensorVector::from_coeffs(
                    n,
                    2,
                    (&tt * nalgebra_vec(&r)).iter().copied().collect(),
                )
                .unwrap();
                let next = relation_r_ij(&p, (i + 1) % n, (j + 1) % n).unwrap();
                assert!(tr.sub(&next).norm() < 1e-9 * next.norm().max(1e-300));
            }
        }
        let rel = relation_space(&p).unwrap();
        for g in [&ss, &tt] {
            let img = rel
                .map_generators(|v| {
                    TensorVector::from_coeffs(n, 2, (g * nalgebra_vec(v)).iter().copied().collect())
                        .unwrap()
                })
                .unwrap();
            assert!(img.distance(&rel) < 1e-9);
        }
    }
}

fn ss_factor(n: usize) -> qnk_core::linalg::CMat {
    HeisenbergElement::s(n).matrix()
}

fn nalgebra_vec(v: &TensorVector) -> qnk_core::linalg::CMat {
    qnk_core::linalg::CMat::from_column_slice(v.coeffs().len(), 1, v.coeffs())
}

#[test]
fn alternative_relations() {
    for (n, k) in [(3, 1), (3, 2), (4, 1), (5, 2), (6, 1)] {
        let p = params(n, k, generic_taus(n, 13, 1)[0]);
        let alt = alt_relations(&p).unwrap();
        let rel = relation_space(&p).unwrap();
        let w = qnk_core::complex::e_real(1.0 / n as f64);
        let s = ss_factor(n);
        for i in 0..n {
            for j in 0..n {
                let r = &alt.r[i * n + j];
                let eig = r.scale(w.powi(2 * j as i32));
                assert!(r.map2(&s, &s).sub(&eig).norm() < 1e-9 * r.norm());
                if n % 2 == 0 {
                    let h = n / 2;
                    let o = &alt.r[((i + h) % n) * n + (j + h) % n];
                    assert!(o.scale(c(-1.0, 0.0)).sub(r).norm() < 1e-9 * r.norm());
                }
            }
        }
        let both: Vec<_> = alt.r.iter().chain(&alt.r_prime).cloned().collect();
        assert!(space_from(n, k, both).distance(&rel) < 1e-7, "n={n} k={k}");
        if n % 2 == 1 {
            assert!(space_from(n, k, alt.r.clone()).distance(&rel) < 1e-7);
            assert!(space_from(n, k, alt.r_prime.clone()).distance(&rel) < 1e-7);
        }
    }
}

#[test]
fn odd_order_variants() {
    for n in [3, 5] {
        let p = params(n, 1, generic_taus(n, 17, 1)[0]);
        let rel = relation_space(&p).unwrap();
        for i in 0..n {
            for j in 1..n {
                let tw = odd_variant_twisted(&p, i, j).unwrap();
                let ps = odd_variant_psi(&p, i, j).unwrap();
                assert!(rel.residual(&tw) < 1e-8);
                assert!(tw.line_distance(&ps) < 1e-8);
            }
        }
        let plain = odd_variant_plain(&p, 0, 1).unwrap();
        assert!(rel.residual(&plain) > 0.1);
    }
    assert!(matches!(
        odd_variant_plain(&params(4, 1, c(0.3, 0.4)), 0, 1),
        Err(Error::EvenOrder { .. })
    ));
}

#[test]
fn antisymmetric_for_k_equal_n_minus_1() {
    for n in 2..=6 {
        for tau in generic_taus(n, 70, 2) {
            let rel = relation_space(&params(n, n - 1, tau)).unwrap();
            assert!(rel.max_residual_in(&alt2_basis(n)) < 1e-8, "n={n}");
        }
    }
}

#[test]
fn two_torsion_points() {
    let halves = [c(0.5, 0.0), ETA * 0.5, (ETA + 1.0) * 0.5];
    for n in [3, 5] {
        for &tau in &halves {
            let rel = relation_space(&params(n, 1, tau)).unwrap();
            assert!(
                rel.max_residual_in(&sym2_basis(n)) < 1e-8,
                "n={n} tau={tau}"
            );
        }
    }
    for n in [4, 6] {
        for &tau in &halves {
            let rel = relation_space(&params(n, 1, tau)).unwrap();
            assert!(
                rel.distance_to_basis(&commutator_space(n)) < 1e-7,
                "n={n} tau={tau}"
            );
        }
    }
}

#[test]
fn relation_space_serializes() {
    let rel = relation_space(&params(3, 1, c(0.21, 0.43)))
        .unwrap()
        .with_seed(42);
    let json = serde_json::to_value(&rel).unwrap();
    assert_eq!(json["rank"], 3);
    assert_eq!(json["seed"], 42);
    assert_eq!(
        json["generators"].as_array().unwrap().len(),
        rel.generators.len()
    );
    assert!(json["singular_values"].as_array().unwrap().len() >= 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_equal_under_k_to_n_minus_k(idx in 0usize..11, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (n, k) = coprime_pairs(6)[idx];
        let lat = LatticeData::with_order(ETA, n).unwrap();
        let tau = lat.point(a, b);
        prop_assume!(is_generic(tau, &lat));
        let r1 = relation_space(&params(n, k, tau)).unwrap();
        let r2 = relation_space(&params(n, n - k, tau)).unwrap();
        prop_assert_eq!(r1.rank, n * (n - 1) / 2);
        prop_assert_eq!(r1.rank, r2.rank);
    }

    #[test]
    fn heisenberg_stability(idx in 0usize..11, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (n, k) = coprime_pairs(6)[idx];
        let lat = LatticeData::with_order(ETA, n).unwrap();
        let tau = lat.point(a, b);
        prop_assume!(is_generic(tau, &lat));
        let rel = relation_space(&params(n, k, tau)).unwrap();
        for g in [HeisenbergElement::s(n), HeisenbergElement::t(n)] {
            let m = g.matrix();
            let img = rel.map_generators(|v| v.map2(&m, &m)).unwrap();
            prop_assert!(img.distance(&rel) < 1e-9);
        }
    }
}
