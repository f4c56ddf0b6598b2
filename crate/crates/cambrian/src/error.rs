//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    BadMatrix(String),

    /// Root closure exceeded its cap; the group is infinite or the matrix is
    /// numerically degenerate.
    #[error("root closure exceeded {cap} roots; the group is infinite or degenerate")]
    RootClosureDiverged { cap: usize },

    #[error("group order exceeds the cap of {max_order} elements")]
    OrderCapExceeded { max_order: usize },

    #[error("not a Coxeter word: {0}")]
    NotACoxeterWord(String),

    #[error("generator s{0} is not an initial letter")]
    NotInitial(u8),

    #[error("element {0} is not join-irreducible")]
    NotJoinIrreducible(usize),

    #[error("partition is not a lattice congruence: {0}")]
    NotACongruence(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("invalid word: {0}")]
    BadWord(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
