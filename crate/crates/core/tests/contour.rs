mod common;

use common::c;
use qnk_core::contour::{count_zeros, ContourOptions, FundamentalParallelogram, QuasiPeriodicity};
use qnk_core::lattice;
use qnk_core::theta::{theta, theta_alpha};
use qnk_core::{LatticeData, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts() -> ContourOptions {
    ContourOptions::default()
}

#[test]
fn basic_theta_has_one_zero_at_lattice() {
    let l = LatticeData::with_order(c(0.0, 1.0), 1).unwrap();
    let base = c(-0.5, 0.0) - l.eta() * 0.5;
    let p = FundamentalParallelogram::standard(base, l.eta()).unwrap();
    let r = count_zeros(|z| theta(z, &l), &p, &opts()).unwrap();
    assert_eq!(r.count, 1);
    assert!(lattice::distance(r.zero_sum, c(1.0, 0.0), l.eta()) < 1e-6);
}

#[test]
fn translated_theta_zero_sum() {
    let l = LatticeData::with_order(c(0.1, 1.1), 1).unwrap();
    let w0 = c(0.37, 0.52);
    let p = FundamentalParallelogram::standard(c(-0.05, -0.07), l.eta()).unwrap();
    let r = count_zeros(|z| theta(z - w0, &l), &p, &opts()).unwrap();
    assert_eq!(r.count, 1);
    assert!(lattice::distance(r.zero_sum - w0, c(1.0, 0.0), l.eta()) < 1e-6);
}

#[test]
fn order_three_zero_sum() {
    let l = LatticeData::with_order(c(0.0, 1.0), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in 0..3 {
        let r = loop {
            let base = l.point(rng.gen(), rng.gen());
            let p = FundamentalParallelogram::standard(base, l.eta()).unwrap();
            if let Ok(r) = count_zeros(|z| Ok(theta_alpha(a, z, &l)?.value), &p, &opts()) {
                break r;
            }
        };
        assert_eq!(r.count, 3);
        assert!(lattice::distance(r.zero_sum - 1.0, c(1.0, 0.0), l.eta()) < 1e-5);
    }
}

#[test]
fn predicted_count_agrees_with_contour() {
    // f(z) = theta_alpha(z) e(b0 z) shifts the quasi-periodicity data; the
    // predicted count and sum must follow.
    let eta = c(0.25, 0.9);
    let l = LatticeData::with_order(eta, 2).unwrap();
    let q = QuasiPeriodicity::theta_n(2, eta);
    let p = FundamentalParallelogram::standard(c(0.013, 0.021), eta).unwrap();
    let r = count_zeros(|z| Ok(theta_alpha(1, z, &l)?.value), &p, &opts()).unwrap();
    assert_eq!(C64::new(r.count as f64, 0.0), q.zero_count());
    assert!(lattice::distance(r.zero_sum - q.zero_sum(), c(1.0, 0.0), eta) < 1e-5);
}

#[test]
fn zero_near_the_contour_triggers_refinement() {
    let z0 = c(0.5, 2e-3);
    let p = FundamentalParallelogram::standard(c(0.0, 0.0), c(0.0, 1.0)).unwrap();
    let r = count_zeros(|z| Ok((z - z0) * (z - c(0.3, 0.6))), &p, &opts()).unwrap();
    assert_eq!(r.count, 2);
    assert!(r.quad_points > opts().quad_points);
    assert!((r.zero_sum - z0 - c(0.3, 0.6)).norm() < 1e-8);
}
