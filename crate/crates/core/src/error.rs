use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sphere chart is singular at the poles (sin θ = {sin_theta:e})")]
    PoleSingularity { sin_theta: f64 },
    #[error("the z chart does not cover the point at infinity")]
    InfinityChart,
    #[error("tangent vector chart does not match the base point chart")]
    ChartMismatch,
    #[error("axis index {0} is not in 1..=3")]
    InvalidAxis(u8),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("homogeneous coordinate w₂ vanishes")]
    ChartSingularity,
    #[error("lift phase undefined: βw + ᾱ = 0")]
    PhaseUndefined,
    #[error("magnetic index 2j = {twice_j} out of range for n = {n}")]
    IndexOutOfRange { n: u32, twice_j: i32 },
    #[error("spin weight mismatch: n = {left} vs n = {right}")]
    WeightMismatch { left: u32, right: u32 },
    #[error("expected spin weight n = {expected}, found n = {found}")]
    WrongWeight { expected: u32, found: u32 },
    #[error("state vector is zero")]
    ZeroState,
    #[error("spin weight n = {0} exceeds the supported maximum of 40")]
    Overflow(u32),
    #[error("operator shapes or bases do not match")]
    Mismatch,
    #[error("Jacobi degree {0} exceeds the supported maximum of 40")]
    DegreeTooLarge(u32),
    #[error("negative power of a vanishing half-angle factor at θ₂ = {0}")]
    AngleSingularity(f64),
    #[error("gate `{0}` is a multiple of the identity; eigenstates are not isolated")]
    DegenerateGate(String),
    #[error("invalid Bloch coordinates (θ = {theta}, φ = {phi})")]
    InvalidBlochPoint { theta: f64, phi: f64 },
    #[error("finite-difference step {0:e} outside [1e-6, 1e-3]")]
    InvalidStep(f64),
    #[error("quadrature resolution {got} below the minimum {min}")]
    ResolutionTooLow { got: usize, min: usize },
}
