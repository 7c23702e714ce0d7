//! Exhaustive enumeration of elementary trapping sets of LDPC Tanner graphs.
//!
//! Given a Tanner graph with girth at least 6 and a range `(a_max, b_max)`,
//! [`search::run`] finds every leafless ETS (LETS) by growing simple cycles
//! with dot, path and lollipop expansions, then every ETS with leaves by
//! attaching degree-one branches. [`oracle`] provides an independent
//! brute-force enumerator for small graphs.

pub mod bounds;
pub mod census;
pub mod error;
pub mod oracle;
pub mod report;
pub mod search;
pub mod tanner;
pub mod tsets;

pub use bounds::{
    build_expansion_table, compute_bounds, degree_cap, eta_y_z, BoundMode, BoundsVector, ExpansionDescriptor,
    ExpansionTable,
};
pub use census::{Category, Census};
pub use error::{AlistError, AlistErrorKind, Error, Result};
pub use report::{ReportRow, RunReport};
pub use search::{full_report, run, SearchConfig, SearchOutcome};
pub use tanner::{emit_alist, parse_alist, DegreeProfile, Girth, TannerGraph};
pub use tsets::{
    classify, gamma, normal_projection, predict_class, CategoryFlags, Classification, ExpansionStep, GammaSummary,
    NormalGraph, TrapClass, TrapSetInstance,
};
