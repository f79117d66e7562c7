use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("zero vector has no Schmidt decomposition")]
    ZeroVector,

    #[error("vector is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("invalid simplex coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("state is not NPT ({0}); witness construction needs a negative partial-transpose eigenvalue")]
    NotNpt(String),

    #[error("witness construction is only defined for d = 3 (got d = {0})")]
    UnsupportedDimension(usize),

    #[error("Schmidt-rank certification failed: all 2x2 principal minors below tolerance (max |M_j| = {0:e})")]
    RankCertification(f64),

    #[error("filter annihilates the state (q = {0:e})")]
    VanishingFilter(f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("expectation value has non-negligible imaginary part {0:e}")]
    NotReal(f64),

    #[error("rejection sampler exhausted after {0} tries")]
    SamplerExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
