use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the inference library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("objects live in different spaces: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid space descriptor: {0}")]
    InvalidSpace(String),

    #[error("embedded vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("empty window {lo}..={hi} in a series of length {n}")]
    EmptyWindow { lo: usize, hi: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("self-normalizer is zero; the statistic is undefined for this input")]
    DegenerateNormalizer,

    #[error("null distribution mismatch: {0}")]
    NullMismatch(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("cache file {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
