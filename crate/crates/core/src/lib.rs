//! Exact computations in graded symplectic geometry: graded polynomial
//! algebras, shifted cotangent charts, derived L∞ brackets of a Hamiltonian
//! and their Maurer-Cartan theory.

pub mod calculus;
pub mod error;
pub mod graded;
pub mod linfty;
pub mod sample;
pub mod scenario;
pub mod symplectic;

pub use error::{Error, Result};
