use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("section is not real: {0}")]
    NotReal(String),
    #[error("point is outside the chart overlap (xi = 0 or infinity)")]
    OutsideOverlap,
    #[error("exponent {0:.3e} exceeds the overflow guard")]
    Overflow(f64),
    #[error("finite-difference step rejected: Richardson estimates disagree by {0:.3e}")]
    StepSize(f64),
    #[error("function is not holomorphic in mu: d/d(conj mu) = {0:.3e}")]
    NotHolomorphic(f64),
    #[error("not a simple pole: extrapolations disagree by {0:.3e}")]
    NotSimplePole(f64),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("non-finite state, last good z = {last_z}")]
    NonFinite { last_z: f64 },
    #[error("polynomial is not monic in eta of degree {0}")]
    NotMonic(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NotReal(_) => "not_real",
            Error::OutsideOverlap => "outside_overlap",
            Error::Overflow(_) => "overflow",
            Error::StepSize(_) => "step_size",
            Error::NotHolomorphic(_) => "not_holomorphic",
            Error::NotSimplePole(_) => "not_simple_pole",
            Error::Singular(_) => "singular",
            Error::OutOfRange(_) => "out_of_range",
            Error::NonFinite { .. } => "non_finite",
            Error::NotMonic(_) => "not_monic",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }

    pub fn last_z(&self) -> Option<f64> {
        match self {
            Error::NonFinite { last_z } => Some(*last_z),
            _ => None,
        }
    }
}
