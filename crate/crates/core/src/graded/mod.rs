//! Free N-graded commutative polynomial algebras with Koszul-signed normal
//! ordering and exact rational coefficients.

mod chart;
mod monomial;
mod poly;

pub use chart::{Chart, Coordinate, Role};
pub use monomial::Monomial;
pub use poly::{rat, GradedPoly, Rational};

use crate::error::Result;

/// Builds a chart from `(name, degree)` declarations.
pub fn make_chart<S: AsRef<str>>(decls: &[(S, i64)]) -> Result<Chart> {
    Chart::new(decls)
}

/// Parity of an integer exponent: true when `(−1)^x = −1`.
pub fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

/// `p` or `−p` according to `negative`.
pub fn signed(p: GradedPoly, negative: bool) -> GradedPoly {
    if negative {
        -p
    } else {
        p
    }
}
