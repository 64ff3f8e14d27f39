use thiserror::Error;

use crate::plex::PointId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("point {point} is outside the chart [0, {chart_size})")]
    PointOutOfChart { point: PointId, chart_size: usize },

    #[error("vertex id {vertex} out of range (mesh has {num_vertices} vertices)")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("cone relation contains a cycle")]
    Cycle,

    #[error("plex is not interpolated")]
    NotInterpolated,

    #[error("not a permutation: {0}")]
    NotBijective(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("inconsistent distribution: {0}")]
    Distribution(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by unreadable or malformed input files, as
    /// opposed to well-formed input that fails validation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Parse { .. })
    }
}
