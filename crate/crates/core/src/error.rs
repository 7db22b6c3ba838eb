use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not invertible: constant term is not a unit")]
    NotInvertible,
    #[error("gcd({h}, {k}) != 1")]
    NotCoprime { h: i64, k: i64 },
    #[error("gcd class mismatch: need gcd(4,k) = {expected}, got k = {k}")]
    GcdClass { expected: i64, k: i64 },
    #[error("integrality precondition violated: {0}")]
    Integrality(String),
    #[error("unknown tag: {0}")]
    UnknownTag(String),
    #[error("n = {n} exceeds enumeration ceiling {ceiling}; use generating function")]
    EnumerationCeiling { n: usize, ceiling: usize },
    #[error("quadrature budget exhausted after {subdivisions} subdivisions (best {best}, err {err})")]
    QuadratureBudget { best: String, err: String, subdivisions: usize },
    #[error("path too close to pole: {0}")]
    PoleProximity(String),
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
    #[error("non-convergent evaluation: {0}")]
    NonConvergent(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
