//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors raised by constructors, loaders, and operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A groupoid specification is ill-formed (bad counts, out-of-range ids,
    /// inconsistent tables).
    #[error("invalid groupoid spec: {0}")]
    InvalidSpec(String),

    /// Two values bound to different groupoids were combined.
    #[error("elements are bound to different groupoids")]
    GroupoidMismatch,

    /// An event or transition id is out of range.
    #[error("{kind} id {index} out of range (limit {limit})")]
    RangeError {
        kind: &'static str,
        index: usize,
        limit: usize,
    },

    /// An operation precondition does not hold (non-state input,
    /// non-observable Hamiltonian, non-self-adjoint operator, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Frame-change operations need a full pair groupoid.
    #[error("unsupported frame: {0}")]
    UnsupportedFrame(String),

    /// The groupoid is disconnected where a connected one is required.
    /// Carries one representative event per component.
    #[error("groupoid is disconnected; component representatives: {0:?}")]
    Disconnected(Vec<usize>),

    /// A numeric parameter is outside its allowed range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
