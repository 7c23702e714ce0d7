use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Alist(#[from] AlistError),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("empty variable set")]
    EmptySet,
    #[error("variable index {index} out of range (n = {n})")]
    InvalidIndex { index: usize, n: usize },
    #[error("not an elementary trapping set: check c{check} has induced degree {degree}")]
    NotElementary { check: usize, degree: usize },
    #[error("impossible class: {0}")]
    ImpossibleClass(String),
    #[error("invalid degree set: {0}")]
    InvalidDegrees(String),
    #[error("no variable degree at most {0}")]
    NoDegreeAtMost(usize),
    #[error("no variable degree below {0}")]
    NoDegreeBelow(usize),
    #[error("a_max = {a_max} is below g/2 = {half_girth}")]
    RangeBelowGirth { a_max: usize, half_girth: usize },
    #[error("girth {girth} < 6 (4-cycle {cycle})")]
    GirthTooSmall { girth: usize, cycle: String },
    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),
    #[error("graph realization failed after {0} attempts")]
    Realization(usize),
    #[error("worker pool: {0}")]
    Workers(String),
    #[error("manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },
}

/// Alist parse failure, with the 1-based line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("alist line {line}: {kind}")]
pub struct AlistError {
    pub line: usize,
    pub kind: AlistErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlistErrorKind {
    UnexpectedEof,
    BadNumber(String),
    MalformedHeader(String),
    OutOfRange { index: usize, bound: usize },
    DegreeMismatch { declared: usize, found: usize },
    DuplicateEdge(usize),
    Inconsistent(String),
    TrailingData,
}

impl fmt::Display for AlistErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlistErrorKind::UnexpectedEof => f.write_str("unexpected end of input"),
            AlistErrorKind::BadNumber(tok) => write!(f, "not a non-negative integer: {tok:?}"),
            AlistErrorKind::MalformedHeader(msg) => write!(f, "malformed header: {msg}"),
            AlistErrorKind::OutOfRange { index, bound } => {
                write!(f, "out-of-range index {index} (max {bound})")
            }
            AlistErrorKind::DegreeMismatch { declared, found } => {
                write!(f, "degree/list length mismatch: declared {declared}, found {found}")
            }
            AlistErrorKind::DuplicateEdge(idx) => write!(f, "duplicate edge to index {idx}"),
            AlistErrorKind::Inconsistent(msg) => write!(f, "inconsistent adjacency: {msg}"),
            AlistErrorKind::TrailingData => f.write_str("unexpected trailing data"),
        }
    }
}
