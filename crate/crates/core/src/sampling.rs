//! Seeded sampling of parameters and evaluation points.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::C64;
use crate::theta::LatticeData;

/// Minimum distance from `(1/2n) Lambda` for a parameter to count as generic.
pub const GENERIC_EXCLUSION: f64 = 1e-3;

/// Uniform point `a + b eta` with `a, b in [0, 1)`.
pub fn uniform_cell_point<R: Rng>(rng: &mut R, lat: &LatticeData) -> C64 {
    let a: f64 = rng.gen();
    let b: f64 = rng.gen();
    lat.point(a, b)
}

/// `true` when `tau` is at least [`GENERIC_EXCLUSION`] away from
/// `(1/2n) Lambda`.
pub fn is_generic(tau: C64, lat: &LatticeData) -> bool {
    lat.distance_to_fraction(tau, 2 * lat.n()) >= GENERIC_EXCLUSION
}

/// Draws generic parameters for `Q_{n,k}` by rejection.
#[derive(Debug, Clone)]
pub struct GenericTauSampler {
    lat: LatticeData,
    rng: ChaCha8Rng,
}

impl GenericTauSampler {
    pub fn new(lat: LatticeData, seed: u64) -> Self {
        Self {
            lat,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn from_rng(lat: LatticeData, rng: ChaCha8Rng) -> Self {
        Self { lat, rng }
    }

    pub fn sample(&mut self) -> C64 {
        loop {
            let t = uniform_cell_point(&mut self.rng, &self.lat);
            if is_generic(t, &self.lat) {
                return t;
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Iterator for GenericTauSampler {
    type Item = C64;

    fn next(&mut self) -> Option<C64> {
        Some(self.sample())
    }
}

/// Point of the complex plane with coordinates drawn from `[-r, r]^2` in the
/// lattice basis.
pub fn box_point<R: Rng>(rng: &mut R, lat: &LatticeData, r: f64) -> C64 {
    let a: f64 = rng.gen_range(-r..r);
    let b: f64 = rng.gen_range(-r..r);
    lat.point(a, b)
}
