use std::collections::BTreeMap;

use super::cotangent::CotangentChart;
use crate::calculus::{one_form_closed, OneForm};
use crate::error::{Error, Result};
use crate::graded::GradedPoly;

impl CotangentChart {
    fn check_graph_form(&self, alpha: &OneForm) -> Result<()> {
        if alpha.chart() != self.base() {
            return Err(Error::ChartMismatch);
        }
        let n = self.shift();
        match alpha.degree() {
            Some(_) if alpha.is_zero() => Ok(()),
            Some(d) if d == n => Ok(()),
            Some(d) => Err(Error::DegreeMismatch {
                context: "1-form for a graph".into(),
                expected: n,
                found: d.to_string(),
            }),
            None => Err(Error::DegreeMismatch {
                context: "1-form for a graph".into(),
                expected: n,
                found: "inhomogeneous".into(),
            }),
        }
    }

    /// Generators `(−1)^{i(n−i)} p_q − α_q` of the vanishing ideal of the graph.
    pub fn graph_generators(&self, alpha: &OneForm) -> Result<Vec<GradedPoly>> {
        self.check_graph_form(alpha)?;
        (0..self.base_dim())
            .map(|q| {
                let p = GradedPoly::var(self.chart(), self.momentum(q));
                let p = if self.epsilon_negative(q) { -p } else { p };
                Ok(&p - &self.pullback(alpha.component(q))?)
            })
            .collect()
    }

    /// Restriction to the graph: `p_q ↦ (−1)^{i(n−i)} α_q`. A polynomial lies
    /// in the graph ideal iff its restriction vanishes.
    pub fn restrict_to_graph(&self, alpha: &OneForm, f: &GradedPoly) -> Result<GradedPoly> {
        self.check_graph_form(alpha)?;
        let mut assignment = BTreeMap::new();
        for q in 0..self.base_dim() {
            let a = self.pullback(alpha.component(q))?;
            assignment.insert(self.momentum(q), if self.epsilon_negative(q) { -a } else { a });
        }
        f.substitute(&assignment)
    }

    /// Brute-force check that the graph ideal is closed under the bracket,
    /// tested on all pairs of generators.
    pub fn graph_ideal_closed(&self, alpha: &OneForm) -> Result<bool> {
        let gens = self.graph_generators(alpha)?;
        for (a, ga) in gens.iter().enumerate() {
            for gb in &gens[a..] {
                let b = self.bracket(ga, gb)?;
                if !self.restrict_to_graph(alpha, &b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the graph of `α` is Lagrangian, i.e. `α` is closed.
    pub fn graph_is_lagrangian(&self, alpha: &OneForm) -> Result<bool> {
        self.check_graph_form(alpha)?;
        Ok(one_form_closed(alpha))
    }
}

pub fn graph_is_lagrangian(t: &CotangentChart, alpha: &OneForm) -> Result<bool> {
    t.graph_is_lagrangian(alpha)
}

#[cfg(test)]
mod tests {
    use super::super::shift_cotangent;
    use super::*;
    use crate::calculus::exterior_derivative;
    use crate::graded::make_chart;

    #[test]
    fn exact_and_non_closed_forms() {
        let base = make_chart(&[("x", 0), ("y", 0)]).unwrap();
        let t = shift_cotangent(&base, 0).unwrap();
        let (x, y) = (GradedPoly::var(&base, 0), GradedPoly::var(&base, 1));
        let df = exterior_derivative(&(&x.pow(2) * &y));
        assert!(t.graph_is_lagrangian(&df).unwrap());
        assert!(t.graph_ideal_closed(&df).unwrap());

        let bad = OneForm::new(&base, vec![y, GradedPoly::zero(&base)]).unwrap();
        assert!(!t.graph_is_lagrangian(&bad).unwrap());
        assert!(!t.graph_ideal_closed(&bad).unwrap());

        let zero = OneForm::zero(&base);
        assert!(t.graph_is_lagrangian(&zero).unwrap());
        assert!(t.graph_ideal_closed(&zero).unwrap());
    }

    #[test]
    fn form_degree_must_match_shift() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let x = GradedPoly::var(&base, 0);
        let alpha = exterior_derivative(&x.pow(2));
        assert!(matches!(
            t.graph_is_lagrangian(&alpha),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
