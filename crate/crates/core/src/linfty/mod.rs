//! Derived L∞ brackets of a Hamiltonian on a shifted cotangent chart and the
//! associated Maurer-Cartan theory.

mod extended;
mod mc;
mod relations;
mod structure;
mod valgebra;

pub use extended::{mc_extended_residual, ExtElem, ExtendedStructure};
pub use mc::{
    exp_flow, gauge_flow_rhs, gauge_rhs, kuranishi, mc_formal_residual, mc_residual, FormalElement,
    FormalResidual,
};
pub use relations::{
    antisymmetric_koszul, linfty_identity_residual, shuffles, MultiBracket, Vector, DEFAULT_ARITY_CAP,
};
pub use structure::{decalage_sign, master_defect, LinftyStructure};
pub use valgebra::{voronov_bracket, CanonicalVAlgebra, VAlgebra};
