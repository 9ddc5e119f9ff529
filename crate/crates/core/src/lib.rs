//! Open book calculus: combinatorial pages, Dehn twist monodromies, binding
//! sums, homology oracles and numerical contact checks.

pub mod binding_sum;
pub mod contact_verify;
pub mod openbook;
pub mod surface;
pub mod zmodule;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown boundary label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate boundary label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("curve vector {0} is neither primitive nor zero")]
    NotPrimitive(String),
    #[error("class has length {found}, surface basis has length {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundary counts differ: {0} vs {1}")]
    BoundaryMismatch(usize, usize),
    #[error("matching is not a bijection between boundary labels")]
    BadMatching,
    #[error("page is disconnected")]
    Disconnected,
    #[error("invalid sum site: {0}")]
    InvalidSite(String),
    #[error("invalid page: {0}")]
    InvalidPage(String),
    #[error("H1 unavailable for symbolic books")]
    Symbolic,
    #[error("descriptor mismatch: {0}")]
    Descriptor(String),
    #[error("no consistent sign: {0}")]
    NoConsistentSign(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("grid too coarse: step {step} exceeds allowed {allowed}")]
    GridTooCoarse { step: f64, allowed: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Seed for randomized suites: `OBCALC_SEED` if set and parseable, otherwise
/// `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("OBCALC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}
