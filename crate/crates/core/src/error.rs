use thiserror::Error;

use crate::dynamics::Trajectory;
use crate::model::CshState;

pub type Result<T> = std::result::Result<T, Error>;

/// State captured when an evolution produces non-finite values.
#[derive(Debug, Clone)]
pub struct BlowUp {
    /// Time at which the failing step would have landed.
    pub time: f64,
    /// Last state that was entirely finite.
    pub last_good: CshState,
    /// Everything recorded before the failure.
    pub partial: Trajectory,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("gauge field is not curl-free (curl L2 norm {0:.3e})")]
    NotCurlFree(f64),

    #[error(
        "topological obstruction: mean of Im(conj(phi0) phi1) is {mean:.6e}; \
         no periodic gauge field can satisfy the Gauss constraint"
    )]
    Obstruction { mean: f64 },

    #[error("time step {dt} exceeds the stability bound {bound:.6e}")]
    Unstable { dt: f64, bound: f64 },

    #[error("blow-up: non-finite values at t = {}", .0.time)]
    BlowUp(Box<BlowUp>),

    #[error("snapshot format error: {0}")]
    Format(String),

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
