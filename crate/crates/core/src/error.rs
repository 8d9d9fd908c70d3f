use std::io;

use thiserror::Error;

/// Errors raised by the algebra, linear-algebra and analysis layers.
#[derive(Debug, Error)]
pub enum CdError {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("{op} requires level >= {min}, got {level}")]
    LevelTooSmall {
        op: &'static str,
        level: u32,
        min: u32,
    },

    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("basis index e{index} out of range for level {level} (dimension {})", 1usize << level)]
    IndexOutOfRange { index: usize, level: u32 },

    #[error("{0}: input must be nonzero")]
    ZeroElement(&'static str),

    #[error("{0}: input must be doubly pure")]
    NotDoublyPure(&'static str),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off})")]
    NotConverged { sweeps: usize, off: f64 },

    #[error("indeterminate verdict: pivot magnitude {pivot:e} lies in the ambiguous band")]
    Indeterminate { pivot: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("I/O failure at entry {index}: {source}")]
    Io {
        index: usize,
        #[source]
        source: io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CdError>;
