use super::structure::LinftyStructure;
use crate::error::{Error, Result};
use crate::graded::{odd, GradedPoly};

pub const DEFAULT_ARITY_CAP: usize = 4;

/// Minimal vector-space interface needed to combine bracket outputs.
pub trait Vector: Clone {
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn vanishes(&self) -> bool;
}

impl Vector for GradedPoly {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// A family of graded antisymmetric multibrackets `l^k`, `k ≥ 0`.
pub trait MultiBracket {
    type Elem: Vector;

    /// Degree of a homogeneous element in the L∞ grading.
    fn degree(&self, x: &Self::Elem) -> Result<i64>;
    fn bracket(&self, args: &[Self::Elem]) -> Result<Self::Elem>;
    fn zero(&self) -> Self::Elem;
}

impl MultiBracket for LinftyStructure {
    type Elem = GradedPoly;

    fn degree(&self, x: &GradedPoly) -> Result<i64> {
        self.linfty_degree(x)
    }

    fn bracket(&self, args: &[GradedPoly]) -> Result<GradedPoly> {
        LinftyStructure::bracket(self, args)
    }

    fn zero(&self) -> GradedPoly {
        GradedPoly::zero(self.cotangent().base())
    }
}

/// All `(k, m−k)`-shuffles as index sequences: the first `k` entries increase,
/// as do the remaining ones.
pub fn shuffles(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == k {
            let mut seq = chosen.clone();
            seq.extend((0..m).filter(|i| !chosen.contains(i)));
            out.push(seq);
            return;
        }
        for i in start..m {
            chosen.push(i);
            rec(i + 1, m, k, chosen, out);
            chosen.pop();
        }
    }
    rec(0, m, k, &mut chosen, &mut out);
    out
}

/// Sign `χ(σ) = sign(σ)·ε(σ)` of reordering elements of the given degrees
/// into the order `seq`; true when negative.
pub fn antisymmetric_koszul(degrees: &[i64], seq: &[usize]) -> bool {
    let mut negative = false;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                // transposition of x_{seq[b]} and x_{seq[a]}
                negative ^= !odd(degrees[seq[a]] * degrees[seq[b]]);
            }
        }
    }
    negative
}

/// The generalized Jacobi combination of arity `m`:
///
/// `Σ_{k≥1} Σ_{σ ∈ Sh(k,m−k)} χ(σ)(−1)^{k(m−k)} l^{m−k+1}(l^k(x_σ…), x_σ…)`
///
/// plus the curvature term `(−1)^m l^{m+1}(l^0, x_1, …, x_m)`. The extra sign
/// comes from moving `l^0`, of degree 2, through the décalage.
pub fn linfty_identity_residual<B: MultiBracket>(b: &B, elems: &[B::Elem], cap: usize) -> Result<B::Elem> {
    let m = elems.len();
    if m > cap {
        return Err(Error::ArityCap { arity: m, cap });
    }
    let degrees = elems.iter().map(|x| b.degree(x)).collect::<Result<Vec<_>>>()?;
    let mut total = b.zero();
    for k in 0..=m {
        for seq in shuffles(m, k) {
            let inner_args: Vec<B::Elem> = seq[..k].iter().map(|&i| elems[i].clone()).collect();
            let inner = b.bracket(&inner_args)?;
            if inner.vanishes() {
                continue;
            }
            let mut outer_args = Vec::with_capacity(m - k + 1);
            outer_args.push(inner);
            outer_args.extend(seq[k..].iter().map(|&i| elems[i].clone()));
            let term = b.bracket(&outer_args)?;
            let negative = if k == 0 {
                odd(m as i64)
            } else {
                antisymmetric_koszul(&degrees, &seq) ^ odd((k * (m - k)) as i64)
            };
            total = total.plus(&if negative { term.negated() } else { term });
        }
    }
    Ok(total)
}
