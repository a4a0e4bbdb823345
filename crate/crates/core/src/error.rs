use thiserror::Error;

/// Errors raised across the crate.
///
/// Each variant names the failing precondition; numeric payloads carry the
/// offending magnitude so callers can decide whether to relax a tolerance.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {tol:e}")]
    NonHermitian { asymmetry: f64, tol: f64 },

    #[error("kernel is not Hermitian on the chosen points: asymmetry {asymmetry:e}")]
    NonHermitianKernel { asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Gram matrix is singular within tolerance")]
    SingularMetric,

    #[error("eigenvalue {value:e} lies in the rank guard band; adjust the tolerance")]
    RankAmbiguous { value: f64 },

    #[error("point {0} lies outside the domain")]
    DomainViolation(String),

    #[error("function has a pole at the resolvent point")]
    PoleAtAlpha,

    #[error("unsupported function: {0}")]
    UnsupportedFunction(String),

    #[error("resolvent is singular at z = {0}")]
    SingularResolvent(String),

    #[error("S-resolvent is singular at p = {0}")]
    SingularSResolvent(String),

    #[error("the model-space inequality is violated: slack eigenvalue {value:e}")]
    InequalityViolated { value: f64 },

    #[error("colligation is not coisometric: defect {defect:e}")]
    NotCoisometric { defect: f64 },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("sigma is not invertible near the requested value: {0}")]
    NonInvertibleSigma(String),

    #[error("division by a zero quaternion")]
    DivisionByZero,

    #[error("complex matrix is not the image of a quaternionic matrix (defect {defect:e})")]
    NotInImage { defect: f64 },

    #[error("series centers differ: {0} vs {1}")]
    CenterMismatch(f64, f64),

    #[error("singular denominator: {0}")]
    SingularDenominator(String),

    #[error("the (a, b) pair must have real coefficients")]
    NonIntrinsicPair,

    #[error("input error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
