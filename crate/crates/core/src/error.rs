use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid intersection array: {}", .0.join("; "))]
    InvalidArray(Vec<String>),

    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),

    #[error("{0} is not a supported prime power")]
    NotPrimePower(u32),

    #[error("eigenvalues are not distinct: theta_{i} and theta_{j} both ~ {value}")]
    RepeatedEigenvalue { i: usize, j: usize, value: f64 },

    #[error("eigenmatrix recurrence broke down: {0}")]
    Eigenmatrix(String),

    #[error("no eigenvalue ordering makes P self-dual (best |P^2 - |X|I| / |X| = {best:e})")]
    NotSelfDual { best: f64 },

    #[error("census rejected: {0}")]
    Census(String),

    #[error("point space of {count} points exceeds the census cap of {cap}")]
    TooManyPoints { count: u64, cap: u64 },

    #[error("polynomial error: {0}")]
    Polynomial(String),

    #[error("every x in a continuum solves the equations: {0}")]
    Continuum(String),

    #[error("solver inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
