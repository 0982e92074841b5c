use crate::error::{Error, Result};
use crate::graded::GradedPoly;
use crate::symplectic::CotangentChart;

/// A graded Lie algebra with an abelian subalgebra and a projection onto it
/// satisfying `p∘ι = id` and `p[x,y] = p[ιp x, y] + p[x, ιp y]`.
///
/// Elements of the subalgebra are represented inside the ambient algebra, so
/// `ι` is implicit and `project` returns `ι∘p`.
pub trait VAlgebra {
    type Elem: Clone;

    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn project(&self, x: &Self::Elem) -> Self::Elem;
    fn in_abelian(&self, x: &Self::Elem) -> bool;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// Error reported when `[Δ,Δ] ≠ 0`.
    fn master_error(&self, square: Self::Elem) -> Error;
}

/// Functions on `T*[n]L` with the canonical bracket, base functions as the
/// abelian subalgebra and the zero section as projection.
#[derive(Clone, Debug)]
pub struct CanonicalVAlgebra {
    cot: CotangentChart,
}

impl CanonicalVAlgebra {
    pub fn new(cot: &CotangentChart) -> CanonicalVAlgebra {
        CanonicalVAlgebra { cot: cot.clone() }
    }
}

impl VAlgebra for CanonicalVAlgebra {
    type Elem = GradedPoly;

    fn bracket(&self, x: &GradedPoly, y: &GradedPoly) -> Result<GradedPoly> {
        self.cot.bracket(x, y)
    }

    fn project(&self, x: &GradedPoly) -> GradedPoly {
        self.cot.zero_section_ambient(x)
    }

    fn in_abelian(&self, x: &GradedPoly) -> bool {
        x.chart() == self.cot.chart() && self.cot.is_base_function(x)
    }

    fn is_zero(&self, x: &GradedPoly) -> bool {
        x.is_zero()
    }

    fn master_error(&self, square: GradedPoly) -> Error {
        Error::MasterEquation {
            defect: square.scale(&crate::graded::rat(1, 2)),
        }
    }
}

/// `Q^i_Δ(a_1,…,a_i) = p[…[Δ, a_1], …, a_i]`, the Taylor coefficients of the
/// derived L∞[1] structure on the abelian subalgebra.
pub fn voronov_bracket<V: VAlgebra>(v: &V, delta: &V::Elem, args: &[V::Elem]) -> Result<V::Elem> {
    let square = v.bracket(delta, delta)?;
    if !v.is_zero(&square) {
        return Err(v.master_error(square));
    }
    if args.iter().any(|a| !v.in_abelian(a)) {
        return Err(Error::NotAbelian);
    }
    let mut h = delta.clone();
    for a in args {
        h = v.bracket(&h, a)?;
    }
    Ok(v.project(&h))
}
