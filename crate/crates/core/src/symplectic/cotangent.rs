use crate::error::{Error, Result};
use crate::graded::{Chart, Coordinate, GradedPoly, Role};

/// The chart of `T*[n]L`: the base coordinates first, in base order, then one
/// momentum `p_<q>` of degree `n − |q|` per base coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentChart {
    base: Chart,
    total: Chart,
    shift: u32,
}

impl CotangentChart {
    pub fn base(&self) -> &Chart {
        &self.base
    }

    /// The full chart carrying base coordinates and momenta.
    pub fn chart(&self) -> &Chart {
        &self.total
    }

    pub fn shift(&self) -> i64 {
        self.shift as i64
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// Index in the full chart of the momentum paired with base coordinate `q`.
    pub fn momentum(&self, q: usize) -> usize {
        self.base.dim() + q
    }

    pub fn is_momentum(&self, index: usize) -> bool {
        index >= self.base.dim()
    }

    /// `(−1)^{i(n−i)}` for a base coordinate of degree `i`, as a bool (true = −1).
    pub(crate) fn epsilon_negative(&self, q: usize) -> bool {
        let i = self.base.degree(q);
        (i * (self.shift() - i)).rem_euclid(2) == 1
    }

    /// Base polynomial viewed on the cotangent chart.
    pub fn pullback(&self, f: &GradedPoly) -> Result<GradedPoly> {
        if f.chart() != &self.base {
            return Err(Error::ChartMismatch);
        }
        Ok(f.reindexed(&self.total, |i| i))
    }

    /// Whether `f` (on the full chart) has no momentum dependence.
    pub fn is_base_function(&self, f: &GradedPoly) -> bool {
        f.terms().all(|(m, _)| !m.any_index(|i| self.is_momentum(i)))
    }

    /// Sets every momentum to zero and returns the result on the base chart.
    pub fn zero_section(&self, f: &GradedPoly) -> Result<GradedPoly> {
        if f.chart() != &self.total {
            return Err(Error::ChartMismatch);
        }
        let kept = f.filter_terms(|m| !m.any_index(|i| self.is_momentum(i)));
        Ok(kept.reindexed(&self.base, |i| i))
    }

    /// Like [`zero_section`](Self::zero_section) but stays on the full chart.
    pub fn zero_section_ambient(&self, f: &GradedPoly) -> GradedPoly {
        f.filter_terms(|m| !m.any_index(|i| self.is_momentum(i)))
    }

    /// Recovers the base polynomial of a momentum-free element.
    pub fn to_base(&self, f: &GradedPoly) -> Result<GradedPoly> {
        if !self.is_base_function(f) {
            return Err(Error::NotBaseFunction);
        }
        self.zero_section(f)
    }
}

/// Builds `T*[n]` of `base`.
pub fn shift_cotangent(base: &Chart, n: i64) -> Result<CotangentChart> {
    for c in base.coords() {
        if (c.degree as i64) > n {
            return Err(Error::ShiftTooSmall {
                shift: n,
                name: c.name.clone(),
                degree: c.degree,
            });
        }
    }
    let m = base.dim();
    let mut coords: Vec<Coordinate> = base.coords().to_vec();
    for c in base.coords() {
        coords.push(Coordinate {
            name: format!("p_{}", c.name),
            degree: (n - c.degree as i64) as u32,
            ordinal: m + c.ordinal,
            role: Role::Momentum,
        });
    }
    for (i, c) in coords.iter().enumerate() {
        if coords[..i].iter().any(|o| o.name == c.name) {
            return Err(Error::DuplicateCoordinate(c.name.clone()));
        }
    }
    let partner = (0..2 * m)
        .map(|i| Some(if i < m { i + m } else { i - m }))
        .collect();
    Ok(CotangentChart {
        base: base.clone(),
        total: Chart::with_pairing(coords, n as u32, partner),
        shift: n as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::make_chart;

    #[test]
    fn momentum_degrees() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let names: Vec<_> = t
            .chart()
            .coords()
            .iter()
            .map(|c| (c.name.as_str(), c.degree))
            .collect();
        assert_eq!(names, vec![("x", 0), ("p_x", 1)]);

        let base = make_chart(&[("x", 0), ("xi", 1)]).unwrap();
        let t = shift_cotangent(&base, 2).unwrap();
        assert_eq!(t.chart().degree(t.momentum(0)), 2);
        assert_eq!(t.chart().degree(t.momentum(1)), 1);
        assert_eq!(t.chart().partner(3), Some(1));
        assert_eq!(t.chart().shift(), Some(2));
    }

    #[test]
    fn shift_must_dominate_base_degrees() {
        let base = make_chart(&[("xi", 1)]).unwrap();
        assert!(matches!(
            shift_cotangent(&base, 0),
            Err(Error::ShiftTooSmall { .. })
        ));
    }

    #[test]
    fn zero_section_drops_momenta() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let x = GradedPoly::var(t.chart(), 0);
        let p = GradedPoly::var(t.chart(), 1);
        let f = &(&p * &x) + &x.pow(2);
        let bx = GradedPoly::var(&base, 0);
        assert_eq!(t.zero_section(&f).unwrap(), bx.pow(2));
        assert_eq!(t.zero_section(&t.pullback(&bx).unwrap()).unwrap(), bx);
    }
}
