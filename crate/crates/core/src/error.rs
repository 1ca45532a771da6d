use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the probability engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("mode count must be at least 1")]
    ZeroModes,

    #[error("state spans {state_modes} modes but the matrix has {matrix_modes}")]
    ModeMismatch {
        state_modes: usize,
        matrix_modes: usize,
    },

    #[error("photon totals differ: input carries {input}, output carries {output}")]
    PhotonMismatch { input: u32, output: u32 },

    #[error("{what} supports at most {limit}, got {got}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("state must contain at least one photon")]
    EmptyState,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no valid photon move exists for a single-mode state")]
    NoValidMove,

    #[error("chain initialization failed: {0}")]
    ChainInit(String),

    #[error("cosine similarity is undefined for an all-zero vector")]
    UndefinedSimilarity,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {detail}")]
    Malformed { path: PathBuf, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
