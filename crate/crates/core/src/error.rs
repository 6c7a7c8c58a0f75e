use thiserror::Error;

use crate::lspace::Model;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("model mismatch: {0:?} vs {1:?}")]
    ModelMismatch(Model, Model),

    #[error("Hukuhara difference does not exist{0}")]
    NoDifference(String),

    #[error("space is not isotropic: Hukuhara differences are not unique")]
    NonIsotropic,

    #[error("element is not convex and invertible")]
    NotInvertible,

    #[error("lifting element must have unit norm, got {0}")]
    NotUnitNorm(f64),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("negative argument {0}")]
    NegativeArgument(f64),

    #[error("derivative of the modulus is unbounded at {0}")]
    Unbounded(f64),

    #[error("invalid modulus of continuity: {0}")]
    InvalidModulus(String),

    #[error("modulus is not subadditive: w({s}+{t}) > w({s}) + w({t})")]
    NotSubadditive { s: f64, t: f64 },

    #[error("ω not concave: sharpness unavailable, bound still valid")]
    NonConcave,

    #[error("invalid range [{0}, {1}]")]
    BadRange(f64, f64),

    #[error("range [{0}, {1}] lies outside the domain [{2}, {3}]")]
    OutsideDomain(f64, f64, f64, f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid step weight: {0}")]
    InvalidWeight(String),

    #[error("weights have different masses: {0} vs {1}")]
    MassMismatch(f64, f64),

    #[error("supports must satisfy a < a' <= b' < b, got a={0}, a'={1}, b'={2}, b={3}")]
    BadSupportOrder(f64, f64, f64, f64),

    #[error("function takes negative values (min {0})")]
    NegativeValues(f64),

    #[error("function must vanish at both ends, got {0} and {1}")]
    NonzeroBoundary(f64, f64),

    #[error("cannot certify glued extremal: {0}")]
    CannotCertify(String),

    #[error("degenerate interval [{0}, {1}]")]
    Degenerate(f64, f64),

    #[error("intervals are not symmetric: c+d={0}, a+b={1}")]
    Asymmetric(f64, f64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("knots violate a <= t1-h < t1+h < ... < tn+h <= b: {0}")]
    KnotViolation(String),

    #[error("element is not convex: {0}")]
    NonConvex(String),

    #[error("spline search failed: {0}")]
    SearchFailed(String),

    #[error("window violates [t-g1,t+g2] ⊂ [t-h1,t+h2] ⊂ [a,b]: {0}")]
    WindowViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Hypothesis violations (exit code 2 in the CLI) as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
