use std::path::PathBuf;

use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph spec `{spec}`: {reason}")]
    Syntax { spec: String, reason: String },

    #[error("factor order must be at least 1")]
    ZeroOrder,

    #[error("invalid explicit graph: {0}")]
    InvalidExplicit(String),

    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("vertex has {found} coordinates, graph has {expected} factors")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {value} on axis {axis} is out of range for a factor of order {order}")]
    CoordinateOutOfRange {
        axis: usize,
        value: i64,
        order: usize,
    },

    #[error("translate leaves the graph: coordinate {value} on axis {axis} (order {order})")]
    TranslateOutOfRange {
        axis: usize,
        value: i64,
        order: usize,
    },

    #[error("nonzero offset on explicit factor at axis {axis}")]
    OffsetOnExplicitFactor { axis: usize },

    #[error("level {level} is out of range for a factor of order {order}")]
    LevelOutOfRange { level: usize, order: usize },

    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("code is empty")]
    EmptyCode,

    #[error("duplicate codeword {0}")]
    DuplicateCodeword(Vertex),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("invalid search: {0}")]
    InvalidSearch(String),

    #[error("malformed file: {0}")]
    Format(String),
}
