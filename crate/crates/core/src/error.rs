use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the fitting routines and data readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least {required} points, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("non-finite coordinate in point {index}")]
    NonFinite { index: usize },

    #[error("all points coincide")]
    CoincidentPoints,

    #[error("point coincides with the circle center (1+4AP = {value:e})")]
    SingularPoint { value: f64 },

    #[error("empty locus: B^2 + C^2 - 4AD = {discriminant:e}")]
    DegenerateCircle { discriminant: f64 },

    #[error("linear system is singular (collinear or coincident data)")]
    SingularSystem,

    #[error("Newton root search did not converge after {steps} steps")]
    NoConvergence { steps: usize },

    #[error("null direction of M - eta*N is not isolable (near-double root)")]
    IllConditioned,

    #[error("data are collinear: no interpolating circle")]
    CollinearData,

    #[error("(A, D, theta) parametrization is singular: {0}")]
    SingularConfiguration(&'static str),

    #[error("no start converged to a minimum")]
    NoMinimumFound,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
