mod common;

use common::c;
use qnk_core::hilbert::{
    graded_dims, graded_dims_with, polynomial_dim, GradedDims, HilbertOptions,
};
use qnk_core::tensor::{
    relation_space, sym2_basis, twist_quadratic, AlgebraParams, HeisenbergElement, RelationSpace,
    TensorVector,
};
use qnk_core::{Error, C64};

const ETA: C64 = C64::new(0.0, 1.0);

fn params(n: usize, k: usize, tau: C64) -> AlgebraParams {
    AlgebraParams::new(n, k, tau, ETA).unwrap()
}

fn columns_as_space(p: &AlgebraParams, q: &qnk_core::linalg::CMat) -> RelationSpace {
    let n = p.n();
    let gens = (0..q.ncols())
        .map(|j| TensorVector::from_coeffs(n, 2, q.column(j).iter().copied().collect()).unwrap())
        .collect();
    RelationSpace::from_generators(p, gens, 1e-8).unwrap()
}

#[test]
fn polynomial_dims() {
    assert_eq!(polynomial_dim(3, 0), 1);
    assert_eq!(polynomial_dim(3, 4), 15);
    assert_eq!(polynomial_dim(6, 4), 126);
    assert_eq!(GradedDims::polynomial(2, 3).dims, vec![1, 2, 3, 4]);
}

#[test]
fn generic_tau_gives_polynomial_growth() {
    for (n, k, d) in [
        (2, 1, 5),
        (3, 1, 5),
        (3, 2, 5),
        (4, 1, 4),
        (4, 3, 4),
        (5, 2, 4),
    ] {
        let rel = relation_space(&params(n, k, c(0.137, 0.291))).unwrap();
        assert_eq!(
            graded_dims(&rel, d).unwrap(),
            GradedDims::polynomial(n, d),
            "n={n} k={k}"
        );
    }
}

#[test]
fn tau_zero_gives_polynomial_growth() {
    for (n, k) in [(3, 1), (4, 3), (5, 2)] {
        let rel = relation_space(&params(n, k, c(0.0, 0.0))).unwrap();
        assert_eq!(graded_dims(&rel, 4).unwrap(), GradedDims::polynomial(n, 4));
    }
}

#[test]
fn exterior_algebra_dims() {
    // Relations x_a x_b + x_b x_a give the exterior algebra.
    let p = params(3, 1, c(0.0, 0.0));
    let rel = columns_as_space(&p, &sym2_basis(3));
    assert_eq!(graded_dims(&rel, 4).unwrap().dims, vec![1, 3, 3, 1, 0]);
}

#[test]
fn twisted_algebra_has_same_dims() {
    let p = params(4, 1, c(0.213, 0.377));
    let rel = relation_space(&p).unwrap();
    let g = HeisenbergElement::new(4, 1, 3, 0);
    let tw = twist_quadratic(&rel, &g.matrix()).unwrap();
    assert_eq!(graded_dims(&tw, 4).unwrap(), graded_dims(&rel, 4).unwrap());
}

#[test]
fn opposite_algebra_has_same_dims() {
    let rel = relation_space(&params(5, 3, c(0.213, 0.377))).unwrap();
    let op = rel.map_generators(|v| v.swap()).unwrap();
    assert_eq!(graded_dims(&op, 4).unwrap(), graded_dims(&rel, 4).unwrap());
}

#[test]
fn resource_guards() {
    let rel = relation_space(&params(6, 1, c(0.213, 0.377))).unwrap();
    assert!(matches!(
        graded_dims(&rel, 5),
        Err(Error::ResourceExceeded { .. })
    ));
    assert!(matches!(
        graded_dims(&rel, 6),
        Err(Error::ResourceExceeded { .. })
    ));
    let small = HilbertOptions {
        max_columns: 100,
        ..HilbertOptions::default()
    };
    assert!(matches!(
        graded_dims_with(&rel, 3, &small),
        Err(Error::ResourceExceeded { .. })
    ));
}
