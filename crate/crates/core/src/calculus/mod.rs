//! Graded derivations and the exterior derivative on functions and 1-forms.

mod derivation;
mod forms;

pub use derivation::{
    apply_derivation, euler_field, is_homological, lie_bracket, partial_derivative, Derivation,
};
pub use forms::{exterior_derivative, interior, one_form_closed, OneForm, TwoFormSkeleton};
