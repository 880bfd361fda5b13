use thiserror::Error;

/// Errors raised by constructions, maps and verifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameter point {0:?} is outside the safe interior of the domain")]
    OutsideDomain(Vec<f64>),

    #[error("non-finite value while evaluating at {0:?}")]
    NonFinite(Vec<f64>),

    #[error("near-null vector encountered (|<v,v>| = {0:e})")]
    NearNull(f64),

    #[error("singular Gram matrix (immersion degenerates here)")]
    SingularGram,

    #[error("invalid epsilon {0}; expected -1, 0 or 1")]
    InvalidEpsilon(i32),

    #[error("t = {t} is outside the warping interval ({lo}, {hi})")]
    OutsideInterval { t: f64, lo: f64, hi: f64 },

    #[error("point outside the domain of {map}: {reason}")]
    OutsideMapDomain { map: String, reason: String },

    #[error("{0} has no inverse")]
    NotInvertible(String),

    #[error("solution blows up before t = {0}")]
    BlowUp(f64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("root finding did not converge for y = {0}")]
    RootFinding(f64),

    #[error("map has no analytic derivatives")]
    NoAnalyticJet,

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("image of {immersion} escapes the domain of {map}")]
    ImageEscapes { immersion: String, map: String },
}

pub type Result<T> = std::result::Result<T, GeomError>;
