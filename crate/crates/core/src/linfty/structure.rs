use crate::error::{Error, Result};
use crate::graded::{odd, rat, signed, GradedPoly};
use crate::symplectic::CotangentChart;

/// `(−1)^{Σ_i (k−i)(|x_i|−1)}` for L∞ degrees `|x_1|..|x_k|`, as ±1.
pub fn decalage_sign(degrees: &[i64]) -> i64 {
    let k = degrees.len() as i64;
    let e: i64 = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| (k - 1 - i as i64) * (d - 1))
        .sum();
    if odd(e) {
        -1
    } else {
        1
    }
}

/// `½{θ,θ}`; vanishes iff `θ` satisfies the master equation.
pub fn master_defect(cot: &CotangentChart, theta: &GradedPoly) -> Result<GradedPoly> {
    Ok(cot.bracket(theta, theta)?.scale(&rat(1, 2)))
}

/// The curved L∞ structure on base functions derived from a Hamiltonian `θ`
/// of degree `n+1` with `{θ,θ} = 0`.
#[derive(Clone, Debug)]
pub struct LinftyStructure {
    cot: CotangentChart,
    theta: GradedPoly,
    curvature: GradedPoly,
    top_arity: usize,
}

impl LinftyStructure {
    pub fn new(cot: &CotangentChart, theta: GradedPoly) -> Result<LinftyStructure> {
        if theta.chart() != cot.chart() {
            return Err(Error::ChartMismatch);
        }
        theta.expect_degree("theta", cot.shift() + 1)?;
        let defect = master_defect(cot, &theta)?;
        if !defect.is_zero() {
            return Err(Error::MasterEquation { defect });
        }
        let curvature = cot.zero_section(&theta)?;
        let top_arity = theta.momentum_degree() as usize;
        Ok(LinftyStructure {
            cot: cot.clone(),
            theta,
            curvature,
            top_arity,
        })
    }

    pub fn cotangent(&self) -> &CotangentChart {
        &self.cot
    }

    pub fn theta(&self) -> &GradedPoly {
        &self.theta
    }

    pub fn shift(&self) -> i64 {
        self.cot.shift()
    }

    /// `l^0 = 0*θ`.
    pub fn curvature(&self) -> &GradedPoly {
        &self.curvature
    }

    pub fn is_strict(&self) -> bool {
        self.curvature.is_zero()
    }

    /// Largest arity with a possibly nonzero bracket: the momentum degree of `θ`.
    pub fn top_arity(&self) -> usize {
        self.top_arity
    }

    /// L∞ degree `|f| − n + 1` of a homogeneous base function.
    pub fn linfty_degree(&self, f: &GradedPoly) -> Result<i64> {
        Ok(f.require_degree("bracket argument")? - self.shift() + 1)
    }

    fn check_base(&self, f: &GradedPoly) -> Result<()> {
        if f.chart() == self.cot.base() {
            Ok(())
        } else if f.chart() == self.cot.chart() {
            Err(Error::NotBaseFunction)
        } else {
            Err(Error::ChartMismatch)
        }
    }

    /// `{…{start, π*f_1}, …, π*f_k}` on the cotangent chart.
    pub(crate) fn nested(&self, start: &GradedPoly, args: &[GradedPoly]) -> Result<GradedPoly> {
        let mut h = start.clone();
        for f in args {
            if h.is_zero() {
                break;
            }
            h = self.cot.bracket(&h, &self.cot.pullback(f)?)?;
        }
        Ok(h)
    }

    /// `l^k` on homogeneous arguments, by nested canonical brackets.
    fn bracket_homogeneous(&self, args: &[GradedPoly]) -> Result<GradedPoly> {
        let base = self.cot.base();
        if args.len() > self.top_arity || args.iter().any(GradedPoly::is_zero) {
            return Ok(GradedPoly::zero(base));
        }
        let n = self.shift();
        let k = args.len() as i64;
        let mut e = 0;
        for (i, f) in args.iter().enumerate() {
            e += (k - 1 - i as i64) * (f.require_degree("bracket argument")? - n);
        }
        let h = self.nested(&self.theta, args)?;
        Ok(signed(self.cot.zero_section(&h)?, odd(e)))
    }

    /// `l^k(f_1,…,f_k)`, extended multilinearly to inhomogeneous arguments.
    pub fn bracket(&self, args: &[GradedPoly]) -> Result<GradedPoly> {
        for f in args {
            self.check_base(f)?;
        }
        multilinear(self.cot.base(), args, |parts| self.bracket_homogeneous(parts))
    }

    /// `l^k` via the jet formula: contract `k` momentum derivatives of `θ`
    /// against coordinate derivatives of the arguments.
    pub fn bracket_jet(&self, args: &[GradedPoly]) -> Result<GradedPoly> {
        for f in args {
            self.check_base(f)?;
        }
        multilinear(self.cot.base(), args, |parts| self.jet_homogeneous(parts))
    }

    fn jet_homogeneous(&self, args: &[GradedPoly]) -> Result<GradedPoly> {
        let k = args.len();
        if k == 0 {
            return Ok(self.curvature.clone());
        }
        let base = self.cot.base();
        let n = self.shift();
        let m = self.cot.base_dim();
        let mut degrees = Vec::with_capacity(k);
        for f in args {
            degrees.push(f.require_degree("bracket argument")?);
        }
        let dec: i64 = (0..k).map(|i| (k - 1 - i) as i64 * (degrees[i] - n)).sum();
        let mut out = GradedPoly::zero(base);
        let mut tuple = vec![0usize; k];
        loop {
            // X_h(q) = (−1)^{(|h|−n)(|q|−n)} ∂h/∂p_q at every step
            let mut e = dec;
            let mut h_degree = n + 1;
            let mut jet = self.theta.clone();
            for (i, &q) in tuple.iter().enumerate() {
                e += (h_degree - n) * (base.degree(q) - n);
                jet = jet.partial(self.cot.momentum(q));
                if jet.is_zero() {
                    break;
                }
                h_degree += degrees[i] - n;
            }
            if !jet.is_zero() {
                let mut term = self.cot.zero_section(&jet)?;
                for (i, &q) in tuple.iter().enumerate() {
                    if term.is_zero() {
                        break;
                    }
                    term = &term * &args[i].partial(q);
                }
                out += &signed(term, odd(e));
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return Ok(out);
                }
                tuple[pos] += 1;
                if tuple[pos] < m {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `l^1`.
    pub fn differential(&self, f: &GradedPoly) -> Result<GradedPoly> {
        self.bracket(std::slice::from_ref(f))
    }

    /// `Q|_L(f) = 0*(X_θ(π*f))`, the homological field restricted to the base.
    pub fn restricted_q(&self, f: &GradedPoly) -> Result<GradedPoly> {
        self.check_base(f)?;
        let q = self.cot.hamiltonian_vf(&self.theta)?;
        self.cot.zero_section(&q.apply(&self.cot.pullback(f)?)?)
    }

    /// Homotopy Poisson form of the brackets: `l^1(f) = X(f)` for the momentum-linear
    /// component `X` of `θ`, and for `j ≥ 2` the nested Schouten bracket of
    /// the momentum-degree `j` component with the arguments.
    pub fn schouten_bracket_reading(&self, args: &[GradedPoly]) -> Result<GradedPoly> {
        for f in args {
            self.check_base(f)?;
        }
        let j = args.len() as u32;
        let components = self.theta.momentum_components();
        let Some(pi_j) = components.get(&j) else {
            return Ok(GradedPoly::zero(self.cot.base()));
        };
        if j == 1 {
            let field = self.cot.j_inverse(pi_j)?;
            return field.apply(&args[0]);
        }
        multilinear(self.cot.base(), args, |parts| {
            if parts.iter().any(GradedPoly::is_zero) {
                return Ok(GradedPoly::zero(self.cot.base()));
            }
            let n = self.shift();
            let mut e = 0;
            for (i, f) in parts.iter().enumerate() {
                e += (j as i64 - 1 - i as i64) * (f.require_degree("bracket argument")? - n);
            }
            let h = self.nested(pi_j, parts)?;
            Ok(signed(self.cot.to_base(&h)?, odd(e)))
        })
    }
}

/// Evaluates a multilinear operation on possibly inhomogeneous arguments by
/// summing over all choices of homogeneous components.
pub(crate) fn multilinear(
    target: &crate::graded::Chart,
    args: &[GradedPoly],
    mut eval: impl FnMut(&[GradedPoly]) -> Result<GradedPoly>,
) -> Result<GradedPoly> {
    if args.iter().all(|f| f.degree().is_some()) {
        return eval(args);
    }
    let parts: Vec<Vec<GradedPoly>> = args
        .iter()
        .map(|f| f.homogeneous_components().into_values().collect())
        .collect();
    if parts.iter().any(Vec::is_empty) {
        return Ok(GradedPoly::zero(target));
    }
    let mut out = GradedPoly::zero(target);
    let mut idx = vec![0usize; args.len()];
    loop {
        let pick: Vec<GradedPoly> = idx.iter().zip(&parts).map(|(&i, p)| p[i].clone()).collect();
        out += &eval(&pick)?;
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < parts[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
