use std::collections::BTreeMap;

use super::derivation::Derivation;
use crate::error::{Error, Result};
use crate::graded::{Chart, GradedPoly};

/// A 1-form `α = Σ dc·α_c`, coefficients written on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    chart: Chart,
    components: Vec<GradedPoly>,
}

impl OneForm {
    pub fn new(chart: &Chart, components: Vec<GradedPoly>) -> Result<OneForm> {
        assert_eq!(components.len(), chart.dim(), "one component per coordinate");
        if components.iter().any(|c| c.chart() != chart) {
            return Err(Error::ChartMismatch);
        }
        Ok(OneForm {
            chart: chart.clone(),
            components,
        })
    }

    pub fn zero(chart: &Chart) -> OneForm {
        OneForm {
            chart: chart.clone(),
            components: vec![GradedPoly::zero(chart); chart.dim()],
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[GradedPoly] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &GradedPoly {
        &self.components[index]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GradedPoly::is_zero)
    }

    /// Common value of `|c| + |α_c|` over the nonzero components, so that
    /// `d f` has the degree of `f`. `Some(0)` for the zero form.
    pub fn degree(&self) -> Option<i64> {
        let mut out = None;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = c.degree()? + self.chart.degree(i);
            match out {
                None => out = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(0))
    }

    /// Coefficients in the left-module presentation `α = Σ α'_c·dc`, where
    /// `α'_c = (−1)^{|c||α_c|} α_c`.
    pub fn left_coefficients(&self) -> Vec<GradedPoly> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.homogeneous_components()
                    .into_iter()
                    .map(|(d, part)| {
                        if (d * self.chart.degree(i)).rem_euclid(2) == 1 {
                            -part
                        } else {
                            part
                        }
                    })
                    .fold(GradedPoly::zero(&self.chart), |a, b| a + b)
            })
            .collect()
    }

    /// Graded curl of the coefficients; vanishes exactly on closed forms.
    pub fn curl(&self) -> TwoFormSkeleton {
        let n = self.chart.dim();
        let mut components = BTreeMap::new();
        for c in 0..n {
            for c2 in c..n {
                let a = self.components[c].partial(c2);
                let b = self.components[c2].partial(c);
                let k = if (self.chart.degree(c) * self.chart.degree(c2)) % 2 == 1 {
                    &a + &b
                } else {
                    &a - &b
                };
                if !k.is_zero() {
                    components.insert((c, c2), k);
                }
            }
        }
        TwoFormSkeleton {
            chart: self.chart.clone(),
            components,
        }
    }
}

/// Coefficients of a 2-form indexed by coordinate pairs `c ≤ c'`; the other
/// half follows from graded antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFormSkeleton {
    chart: Chart,
    components: BTreeMap<(usize, usize), GradedPoly>,
}

impl TwoFormSkeleton {
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn stored(&self) -> impl Iterator<Item = (&(usize, usize), &GradedPoly)> {
        self.components.iter()
    }

    /// Component at `(c, c')` for any order of the pair.
    pub fn get(&self, c: usize, c2: usize) -> GradedPoly {
        if c <= c2 {
            return self
                .components
                .get(&(c, c2))
                .cloned()
                .unwrap_or_else(|| GradedPoly::zero(&self.chart));
        }
        let v = self.get(c2, c);
        if (self.chart.degree(c) * self.chart.degree(c2)) % 2 == 1 {
            v
        } else {
            -v
        }
    }
}

/// `df = Σ dc·∂f/∂c`.
pub fn exterior_derivative(f: &GradedPoly) -> OneForm {
    let chart = f.chart();
    OneForm {
        chart: chart.clone(),
        components: (0..chart.dim()).map(|i| f.partial(i)).collect(),
    }
}

pub fn one_form_closed(alpha: &OneForm) -> bool {
    alpha.curl().is_zero()
}

/// Contraction `ι_X α = Σ X(c)·α_c`, normalized so that `ι_X df = X(f)`.
pub fn interior(x: &Derivation, alpha: &OneForm) -> Result<GradedPoly> {
    if x.chart() != alpha.chart() {
        return Err(Error::ChartMismatch);
    }
    let mut out = GradedPoly::zero(alpha.chart());
    for (img, comp) in x.images().iter().zip(&alpha.components) {
        out += &(img * comp);
    }
    Ok(out)
}
