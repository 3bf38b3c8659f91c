//! Knot diagrams in planar-diagram form, orientation data, mirroring and slopes.

mod diagram;
mod dt;
mod parse;
mod slope;

pub use diagram::{count_faces, KnotDiagram};
pub use dt::dt_to_pd;
pub use parse::{parse_knot_code, parse_pd};
pub use slope::{normalize_slope, Slope, SlopePair, SurgeryType};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
}
