use std::collections::BTreeMap;

use super::cotangent::CotangentChart;
use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::graded::GradedPoly;

/// A multivector field on the base, stored as its image under `J`: a
/// polynomial on the cotangent chart whose momentum degree is the arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    poly: GradedPoly,
}

impl Multivector {
    pub fn from_poly(t: &CotangentChart, poly: GradedPoly) -> Result<Multivector> {
        if poly.chart() != t.chart() {
            return Err(Error::ChartMismatch);
        }
        Ok(Multivector { poly })
    }

    pub fn from_function(t: &CotangentChart, f: &GradedPoly) -> Result<Multivector> {
        Ok(Multivector { poly: t.pullback(f)? })
    }

    pub fn from_vector_field(t: &CotangentChart, x: &Derivation) -> Result<Multivector> {
        Ok(Multivector { poly: t.j_map(x)? })
    }

    pub fn poly(&self) -> &GradedPoly {
        &self.poly
    }

    /// Components keyed by momentum degree (number of vector slots).
    pub fn components(&self) -> BTreeMap<u32, GradedPoly> {
        self.poly.momentum_components()
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        Ok(Multivector {
            poly: self.poly.multiply(&other.poly)?,
        })
    }
}

/// Schouten bracket, the canonical bracket transported through `J`.
pub fn schouten_bracket(t: &CotangentChart, a: &Multivector, b: &Multivector) -> Result<Multivector> {
    Ok(Multivector {
        poly: t.bracket(&a.poly, &b.poly)?,
    })
}
