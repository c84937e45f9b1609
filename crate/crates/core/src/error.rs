use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lattice data: {0}")]
    InvalidLattice(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("theta series did not reach tolerance {eps:e} within {cap} terms")]
    NonConvergent { eps: f64, cap: usize },

    #[error("psi basis requires odd order, got n = {n}")]
    EvenOrder { n: usize },

    #[error("function vanishes on the contour (|f| = {modulus:e} below floor {floor:e})")]
    ZeroOnBoundary { modulus: f64, floor: f64 },

    #[error("winding integral {value} is {residual:e} away from an integer")]
    NonInteger { value: f64, residual: f64 },

    #[error("tau lies in (1/n)Lambda (distance {distance:e}); use the continued operator")]
    TorsionPoint { distance: f64 },

    #[error("numerical rank is ambiguous: singular value gap {gap:e} below {threshold}")]
    RankAmbiguous { gap: f64, threshold: f64 },

    #[error("linear map is singular (condition ratio {ratio:e})")]
    SingularMap { ratio: f64 },

    #[error("problem size {size} exceeds configured cap {cap}")]
    ResourceExceeded { size: usize, cap: usize },

    #[error("evaluation point too close to a pole (|theta| = {modulus:e})")]
    PoleProximity { modulus: f64 },
}
