use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("requested {requested} primes, but at most {cap} are supported")]
    PrimeCapExceeded { requested: usize, cap: usize },

    #[error("invalid curve specification: {0}")]
    InvalidSpec(String),

    #[error("invalid parameter interval [{t0}, {t1}]: need finite t0 < t1")]
    InvalidInterval { t0: f64, t1: f64 },

    #[error("invalid sample count {0}: need at least 2")]
    InvalidSampleCount(usize),

    #[error("invalid quadrature configuration: {0}")]
    InvalidQuadrature(String),

    #[error("quadrature did not converge within {subdivisions} subdivisions (best estimate {estimate})")]
    NonConvergence { estimate: f64, subdivisions: u64 },

    #[error("curvature undefined at t = {t}: speed {speed:e} is below the floor {floor:e}")]
    SingularPoint { t: f64, speed: f64, floor: f64 },

    #[error("polyline is empty")]
    EmptyPolyline,

    #[error("invalid render style: {0}")]
    InvalidStyle(String),

    #[error("spiral side must be odd and positive, got {0}")]
    EvenSide(usize),

    #[error("spiral side {side} exceeds the supported maximum {max}")]
    SideTooLarge { side: usize, max: usize },

    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
