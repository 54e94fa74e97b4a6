use thiserror::Error;

/// Errors raised by the algebra, solvers and constructions in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero quaternion")]
    ZeroDivision,
    #[error("element is not a zero divisor: |<v,v>| = {qq_abs:e}")]
    NotAZeroDivisor { qq_abs: f64 },
    #[error("zero input has no zero-divisor witness")]
    ZeroInput,
    #[error("witness {0} is not an imaginary unit within tolerance")]
    WitnessOffSphere(String),
    #[error("scale quaternion must be non-zero")]
    InvalidScale,
    #[error("invalid search rectangle: {0}")]
    InvalidRect(String),
    #[error("Q_c vanishes on the search boundary: {0}")]
    BoundaryZero(String),
    #[error("Newton refinement did not converge after {iterations} iterations near ({x}, {y})")]
    NonConvergence { iterations: usize, x: f64, y: f64 },
    #[error("winding numbers of subrectangles do not add up: {0}")]
    IllConditioned(String),
    #[error("value {0} lies in the avoided slice and is not attained")]
    Unreachable(String),
    #[error("target points are not pairwise distinct")]
    DuplicatePoints,
    #[error("plane directions are linearly dependent")]
    DegeneratePlane,
    #[error("targets are not in general position (contained in an affine 3-space)")]
    NotGeneralPosition,
    #[error("basis matrix is singular or its Gram matrix is not positive definite")]
    SingularBasis,
    #[error("monomial curve coefficient alpha[{0}] must be non-zero")]
    InvalidAlpha(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Machine-readable error code used in CLI payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDivision => "ZeroDivision",
            Error::NotAZeroDivisor { .. } => "NotAZeroDivisor",
            Error::ZeroInput => "ZeroInput",
            Error::WitnessOffSphere(_) => "WitnessOffSphere",
            Error::InvalidScale => "InvalidScale",
            Error::InvalidRect(_) => "InvalidRect",
            Error::BoundaryZero(_) => "BoundaryZero",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::IllConditioned(_) => "IllConditioned",
            Error::Unreachable(_) => "Unreachable",
            Error::DuplicatePoints => "DuplicatePoints",
            Error::DegeneratePlane => "DegeneratePlane",
            Error::NotGeneralPosition => "NotGeneralPosition",
            Error::SingularBasis => "SingularBasis",
            Error::InvalidAlpha(_) => "InvalidAlpha",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
