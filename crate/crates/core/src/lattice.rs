//! Coordinates and distances with respect to a rank-two lattice
//! `Z w1 + Z w2`.

use crate::complex::C64;

/// Real coordinates `(a, b)` with `z = a w1 + b w2`.
pub fn coords(z: C64, w1: C64, w2: C64) -> (f64, f64) {
    let det = (w2 * w1.conj()).im;
    let b = (z * w1.conj()).im / det;
    let a = -(z * w2.conj()).im / det;
    (a, b)
}

/// Representative of `z` modulo the lattice with coordinates in `[0, 1)^2`.
pub fn reduce(z: C64, w1: C64, w2: C64) -> C64 {
    let (a, b) = coords(z, w1, w2);
    w1 * (a - a.floor()) + w2 * (b - b.floor())
}

/// Euclidean distance from `z` to the nearest lattice point.
pub fn distance(z: C64, w1: C64, w2: C64) -> f64 {
    let (a, b) = coords(z, w1, w2);
    let (a0, b0) = (a.floor(), b.floor());
    let mut best = f64::INFINITY;
    // The nearest point is among the corners of the enclosing cell and their
    // neighbours, even for strongly skewed bases.
    for da in -1..=2 {
        for db in -1..=2 {
            let p = w1 * (a0 + da as f64) + w2 * (b0 + db as f64);
            best = best.min((z - p).norm());
        }
    }
    best
}

/// Distance from `z` to the refined lattice `(1/m)(Z w1 + Z w2)`.
pub fn distance_to_fraction(z: C64, w1: C64, w2: C64, m: usize) -> f64 {
    let s = m as f64;
    distance(z * s, w1, w2) / s
}

/// `true` when `z` and `w` agree modulo the lattice up to `tol`.
pub fn congruent(z: C64, w: C64, w1: C64, w2: C64, tol: f64) -> bool {
    distance(z - w, w1, w2) < tol
}
