//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Rejection sampling could not produce a configuration respecting the
    /// pair-distance cutoff; `k0R` is too small relative to `xi_min`.
    #[error(
        "configuration sampling exhausted after {redraws} redraws \
         (k0R = {k0r}, xi_min = {xi_min}): k0R is too small relative to the cutoff"
    )]
    SamplingExhausted { redraws: u64, k0r: f64, xi_min: f64 },

    #[error("pair geometry requires two distinct atoms, got i = j = {index}")]
    IdenticalAtoms { index: usize },

    #[error("atom index {index} out of range for {n_atoms} atoms")]
    AtomIndexOutOfRange { index: usize, n_atoms: usize },

    #[error("{context}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{context}: requires {expected}, got {found}")]
    UnsupportedAtomCount {
        context: &'static str,
        expected: &'static str,
        found: usize,
    },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidInput(String),

    #[error("empty time series")]
    EmptySeries,

    #[error("power-law fit: {0}")]
    PowerLawFit(&'static str),

    #[error("numerical failure: {0}")]
    Numerical(&'static str),
}
