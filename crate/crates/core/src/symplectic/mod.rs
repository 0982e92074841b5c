//! Shifted cotangent charts and their canonical Poisson bracket.

mod bracket;
mod cotangent;
mod graph;
mod multivector;

pub use bracket::{canonical_bracket, hamiltonian_vf, j_map, zero_section_pullback};
pub use cotangent::{shift_cotangent, CotangentChart};
pub use graph::graph_is_lagrangian;
pub use multivector::{schouten_bracket, Multivector};
