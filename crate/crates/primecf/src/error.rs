use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {x} exceeds sieve limit {limit}")]
    OutOfSieveRange { x: f64, limit: u64 },

    #[error("sieve limit {limit} needs ~{needed} bytes, over the {budget} byte budget")]
    Resource { limit: u64, needed: u64, budget: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("continued fraction hit a zero denominator at level {level}")]
    EvaluationSingularity { level: usize },

    #[error("coefficient stream is not exact; convergents need exact rational terms")]
    UnsupportedExactness,

    #[error("moment sequence is ill-conditioned at qd level {level} (Hankel determinant {det:e})")]
    IllConditionedMoments { level: usize, det: f64 },

    #[error("contraction degenerate: c_{index} is zero")]
    ContractionDegenerate { index: usize },

    #[error("evaluation point {z} lies on the measure support [{s}, {t}]")]
    OnSupport { z: f64, s: f64, t: f64 },

    #[error("qd depth {requested} exceeds the precision cap {cap} (raise --digits)")]
    DepthCap { requested: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
