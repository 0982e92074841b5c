use thiserror::Error;

use crate::graded::GradedPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate coordinate name `{0}`")]
    DuplicateCoordinate(String),

    #[error("coordinate `{name}` has negative degree {degree}")]
    NegativeDegree { name: String, degree: i64 },

    #[error("operands live on different charts")]
    ChartMismatch,

    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),

    #[error("degree mismatch: {context} expected degree {expected}, found {found}")]
    DegreeMismatch {
        context: String,
        expected: i64,
        found: String,
    },

    #[error("{0} is not homogeneous")]
    Inhomogeneous(String),

    #[error("derivation must have degree 1 to be tested for nilpotence, got {0}")]
    NotDegreeOne(i64),

    #[error("shift {shift} is smaller than base degree {degree} of `{name}`")]
    ShiftTooSmall { shift: i64, name: String, degree: u32 },

    #[error("chart is not a shifted cotangent chart")]
    NotCotangent,

    #[error("vector field is not tangent to the base")]
    NotTangentToBase,

    #[error("element is not a function on the base (it depends on momenta)")]
    NotBaseFunction,

    #[error("master equation fails; defect {{theta,theta}}/2 = {defect}")]
    MasterEquation { defect: GradedPoly },

    #[error("argument is not in the abelian subalgebra")]
    NotAbelian,

    #[error("structure is curved (0*theta = {curvature}); operation requires a strict structure")]
    NotStrict { curvature: GradedPoly },

    #[error("arity {arity} exceeds configured cap {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("series does not terminate: no nilpotence certificate ({0})")]
    NonTerminating(String),

    #[error("element is not l^1-closed; l^1(f) = {residual}")]
    NotClosed { residual: GradedPoly },

    #[error("invalid bracket pattern: {0}")]
    InvalidPattern(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
