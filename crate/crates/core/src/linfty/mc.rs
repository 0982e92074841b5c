use num_bigint::BigInt;
use num_traits::One;

use super::structure::LinftyStructure;
use crate::error::{Error, Result};
use crate::graded::{GradedPoly, Rational};
use crate::symplectic::CotangentChart;

pub(crate) fn inverse_factorial(k: usize) -> Rational {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= i;
    }
    Rational::new(BigInt::one(), f)
}

impl LinftyStructure {
    /// `h_k = {h_{k−1}, π*f}` starting from `h_0 = θ`, until it vanishes.
    pub(crate) fn chain(&self, f: &GradedPoly) -> Result<Vec<GradedPoly>> {
        chain_from(self.cotangent(), self.theta(), f)
    }

    pub(crate) fn require_role(&self, f: &GradedPoly, what: &str, degree: i64) -> Result<()> {
        if f.chart() != self.cotangent().base() {
            return Err(if f.chart() == self.cotangent().chart() {
                Error::NotBaseFunction
            } else {
                Error::ChartMismatch
            });
        }
        f.expect_degree(what, degree)
    }
}

/// `h_k = {h_{k−1}, π*f}` from `h_0 = start` until it vanishes. Each step
/// lowers the momentum degree, so the chain is certified to stop after at most
/// `momentum_degree(start)` steps; outliving that bound is an error.
pub(crate) fn chain_from(
    cot: &CotangentChart,
    start: &GradedPoly,
    f: &GradedPoly,
) -> Result<Vec<GradedPoly>> {
    let pf = cot.pullback(f)?;
    let bound = start.momentum_degree() as usize;
    let mut out = vec![start.clone()];
    if start.is_zero() {
        return Ok(out);
    }
    loop {
        let next = cot.bracket(out.last().expect("non-empty"), &pf)?;
        if next.is_zero() {
            return Ok(out);
        }
        if out.len() > bound {
            return Err(Error::NonTerminating(format!(
                "nested bracket nonzero beyond arity {bound}"
            )));
        }
        out.push(next);
    }
}

/// `Σ_{k≥0} l^k(f,…,f)/k!` for a base function `f` of degree `n`.
pub fn mc_residual(s: &LinftyStructure, f: &GradedPoly) -> Result<GradedPoly> {
    s.require_role(f, "Maurer-Cartan candidate", s.shift())?;
    let cot = s.cotangent();
    let mut out = GradedPoly::zero(cot.base());
    for (k, h) in s.chain(f)?.iter().enumerate() {
        out += &cot.zero_section(h)?.scale(&inverse_factorial(k));
    }
    Ok(out)
}

/// `e^{−{π*f,·}} g = Σ_k (−1)^k/k! {π*f,·}^k g` for a base function `f`.
pub fn exp_flow(cot: &CotangentChart, f: &GradedPoly, g: &GradedPoly) -> Result<GradedPoly> {
    let pf = cot.pullback(f)?;
    // each application lowers the momentum degree by one
    let bound = g.momentum_degree() as usize;
    let mut term = g.clone();
    let mut out = g.clone();
    let mut k = 0;
    loop {
        term = cot.bracket(&pf, &term)?;
        if term.is_zero() {
            return Ok(out);
        }
        k += 1;
        if k > bound {
            return Err(Error::NonTerminating(format!(
                "flow series nonzero beyond order {bound}"
            )));
        }
        let c = inverse_factorial(k);
        let c = if k % 2 == 1 { -c } else { c };
        out += &term.scale(&c);
    }
}

/// `Σ_{k≥0} l^{1+k}(f,…,f,λ)/k!` for `f` of degree `n` and `λ` of degree `n−1`.
pub fn gauge_rhs(s: &LinftyStructure, f: &GradedPoly, lambda: &GradedPoly) -> Result<GradedPoly> {
    s.require_role(f, "Maurer-Cartan candidate", s.shift())?;
    s.require_role(lambda, "gauge parameter", s.shift() - 1)?;
    let cot = s.cotangent();
    let pl = cot.pullback(lambda)?;
    let mut out = GradedPoly::zero(cot.base());
    for (k, h) in s.chain(f)?.iter().enumerate() {
        let b = cot.bracket(h, &pl)?;
        out += &cot.zero_section(&b)?.scale(&inverse_factorial(k));
    }
    Ok(out)
}

/// `0*{π*λ, e^{−{π*f,·}}θ}`, the gauge vector read off the flowed Hamiltonian.
pub fn gauge_flow_rhs(s: &LinftyStructure, f: &GradedPoly, lambda: &GradedPoly) -> Result<GradedPoly> {
    let cot = s.cotangent();
    let flowed = exp_flow(cot, f, s.theta())?;
    cot.zero_section(&cot.bracket(&cot.pullback(lambda)?, &flowed)?)
}

/// First obstruction `l^2(f,f)` of an infinitesimal deformation `f`.
pub fn kuranishi(s: &LinftyStructure, f: &GradedPoly) -> Result<GradedPoly> {
    s.require_role(f, "infinitesimal deformation", s.shift())?;
    let residual = s.differential(f)?;
    if !residual.is_zero() {
        return Err(Error::NotClosed { residual });
    }
    s.bracket(&[f.clone(), f.clone()])
}

/// A formal power series `Σ_{j=1}^N ν^j f_j` of degree-`n` base functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalElement {
    coeffs: Vec<GradedPoly>,
}

impl FormalElement {
    /// `coeffs[j]` is the coefficient of `ν^{j+1}`; the truncation order is
    /// the number of coefficients.
    pub fn new(s: &LinftyStructure, coeffs: Vec<GradedPoly>) -> Result<FormalElement> {
        for c in &coeffs {
            s.require_role(c, "formal coefficient", s.shift())?;
        }
        Ok(FormalElement { coeffs })
    }

    /// `ν·f` truncated at order `order`.
    pub fn taylor_lift(s: &LinftyStructure, f: &GradedPoly, order: usize) -> Result<FormalElement> {
        FormalElement::from_curve(s, std::slice::from_ref(f), order)
    }

    /// Taylor series of the polynomial curve `t ↦ Σ_j t^{j+1} curve[j]`,
    /// truncated or zero-padded to `order`.
    pub fn from_curve(s: &LinftyStructure, curve: &[GradedPoly], order: usize) -> Result<FormalElement> {
        let base = s.cotangent().base();
        let coeffs = (0..order)
            .map(|j| curve.get(j).cloned().unwrap_or_else(|| GradedPoly::zero(base)))
            .collect();
        FormalElement::new(s, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[GradedPoly] {
        &self.coeffs
    }
}

/// Residual of the formal Maurer-Cartan equation, order by order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalResidual {
    /// Order-zero part, the curvature `l^0`.
    pub curvature: GradedPoly,
    /// `orders[k−1]` is the coefficient of `ν^k`.
    pub orders: Vec<GradedPoly>,
}

impl FormalResidual {
    pub fn is_zero(&self) -> bool {
        self.curvature.is_zero() && self.orders.iter().all(GradedPoly::is_zero)
    }
}

fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficient of `ν^k` in `Σ_l l^l(F,…,F)/l!` for every `1 ≤ k ≤ N`:
/// `Σ_l (1/l!) Σ_{i_1+…+i_l = k} l^l(f_{i_1},…,f_{i_l})`.
pub fn mc_formal_residual(s: &LinftyStructure, element: &FormalElement) -> Result<FormalResidual> {
    let base = s.cotangent().base();
    let mut orders = Vec::with_capacity(element.order());
    for k in 1..=element.order() {
        let mut acc = GradedPoly::zero(base);
        for comp in compositions(k) {
            let l = comp.len();
            if l > s.top_arity() {
                continue;
            }
            let args: Vec<GradedPoly> = comp.iter().map(|&i| element.coeffs[i - 1].clone()).collect();
            if args.iter().any(GradedPoly::is_zero) {
                continue;
            }
            acc += &s.bracket(&args)?.scale(&inverse_factorial(l));
        }
        orders.push(acc);
    }
    Ok(FormalResidual {
        curvature: s.curvature().clone(),
        orders,
    })
}
