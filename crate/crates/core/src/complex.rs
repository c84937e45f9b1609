//! Complex scalar conventions shared by every module.

use std::f64::consts::PI;

pub use num_complex::Complex64 as C64;

/// `e(w) = exp(2 pi i w)`. Every exponential factor in the crate goes through
/// this function so the branch convention is uniform.
#[inline]
pub fn e(w: C64) -> C64 {
    (C64::new(0.0, 2.0 * PI) * w).exp()
}

/// `e(x)` for a real argument.
#[inline]
pub fn e_real(x: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * x)
}

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Serde helper that writes a complex number as `{"re": .., "im": ..}`.
pub mod serde_cx {
    use super::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(C64::new(r.re, r.im))
    }

    /// Same convention for sequences.
    pub mod vec {
        use super::{Repr, C64};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
            let reprs: Vec<Repr> = v.iter().map(|z| Repr { re: z.re, im: z.im }).collect();
            reprs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
            let reprs = Vec::<Repr>::deserialize(d)?;
            Ok(reprs.into_iter().map(|r| C64::new(r.re, r.im)).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_is_periodic_and_multiplicative() {
        let w = c(0.3, -0.2);
        assert!((e(w + 1.0) - e(w)).norm() < 1e-14);
        let u = c(-0.7, 0.1);
        assert!((e(w + u) - e(w) * e(u)).norm() < 1e-13);
        assert!((e_real(0.25) - c(0.0, 1.0)).norm() < 1e-15);
    }
}
