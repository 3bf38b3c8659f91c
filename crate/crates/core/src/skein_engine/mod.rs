//! Jones, Alexander/Conway and Kauffman polynomials of knot diagrams.

mod jones;
mod kauffman;
mod seifert;

pub use jones::{jones, jones_from_kauffman};
pub use kauffman::{dubrovnik, dubrovnik_from_kauffman, kauffman_polynomial, SkeinCache};
pub use seifert::{
    alexander_conway, braid_seifert_matrix, braid_word, conway_from_alexander, normalize_alexander,
    seifert_circles, seifert_matrix, SeifertMatrix,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error("polynomial is not a knot polynomial: {0}")]
    Malformed(String),
}

/// Caps on the exponential algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinLimits {
    /// Largest diagram accepted by the bracket state sum.
    pub max_state_sum_crossings: usize,
    /// Largest diagram accepted by the Kauffman recursion.
    pub max_kauffman_crossings: usize,
    /// Cache misses allowed in one Kauffman evaluation.
    pub max_recursion_nodes: u64,
}

impl Default for SkeinLimits {
    fn default() -> Self {
        Self {
            max_state_sum_crossings: 20,
            max_kauffman_crossings: 16,
            max_recursion_nodes: 5_000_000,
        }
    }
}
