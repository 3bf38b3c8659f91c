//! Knot invariants and obstructions to chirally cosmetic surgeries.

pub mod algebra;
pub mod criteria_classifier;
pub mod finite_type;
pub mod floer_rank;
pub mod knot_model;
pub mod quantum_so3;
pub mod skein_engine;
