use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root datum {0}")]
    Construction(String),
    #[error("weight {0:?} is not in the lattice")]
    Membership(Vec<i64>),
    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),
    #[error("parameter namespaces differ: {0} vs {1}")]
    Namespace(String, String),
    #[error("inexact string division along {alpha:?} (order {order}): remainder {remainder} in coset of {coset:?}")]
    Divisibility {
        alpha: Vec<i64>,
        order: i64,
        coset: Vec<i64>,
        remainder: String,
    },
    #[error("t -> infinity limit does not exist: term at {weight:?} has coefficient {coeff}")]
    Limit { weight: Vec<i64>, coeff: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("mode error: {0}")]
    Mode(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
