//! Numerical construction of the Feigin–Odesskii elliptic algebras
//! `Q_{n,k}(E, tau)`.
//!
//! The crate evaluates the order-`n` theta functions attached to the lattice
//! `Z + Z eta`, assembles the quadratic relations of `Q_{n,k}(E, tau)` as
//! subspaces of `V ⊗ V` (including the holomorphic continuation to torsion
//! points), and provides the linear algebra needed to compare relation
//! spaces, twist them by Heisenberg automorphisms and compute truncated
//! Hilbert series.
//!
//! Module map:
//!
//! * [`theta`]: theta functions with rigorous truncation bounds.
//! * [`contour`]: argument-principle zero counting on fundamental
//!   parallelograms.
//! * [`tensor`]: relation vectors, the R-operator, relation spaces,
//!   Heisenberg action, twists and isomorphism maps.
//! * [`hilbert`]: graded dimensions of `T(V)/(rel)`.
//! * [`shuffle`]: the elliptic shuffle product and the map from
//!   antisymmetric theta functions to relations.

pub mod complex;
pub mod contour;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod linalg;
pub mod sampling;
pub mod shuffle;
pub mod tensor;
pub mod theta;

pub use complex::{e, C64};
pub use error::{Error, Result};
pub use theta::{LatticeData, ThetaValue};
