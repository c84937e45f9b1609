//! Quadratic relations of `Q_{n,k}(E, tau)` as subspaces of `V ⊗ V`.

mod heisenberg;
mod params;
mod relations;
mod space;
mod vector;

pub use heisenberg::{heisenberg_matrix, HeisenbergElement};
pub use params::{gcd, md, mod_inverse, AlgebraParams, TORSION_TOL};
pub use relations::{
    alt_relations, is_identically_zero, line_limit, odd_variant_plain, odd_variant_psi,
    odd_variant_twisted, operator_r, operator_r_diag, operator_r_diag_continued, relation_r_ij,
    tau_zero_combination, AltRelations, CONTINUATION_POINTS, CONTINUATION_RADIUS, VANISHING_COLUMN,
};
pub use space::{
    alt2_basis, commutator_space, map_k_kprime, negation_map, relation_space, relation_space_tol,
    sym2_basis, twist_quadratic, KPrimeCandidate, KPrimeReport, NegationReport, RelationSpace,
};
pub use vector::TensorVector;
