use super::cotangent::CotangentChart;
use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::graded::{odd, signed, GradedPoly};

impl CotangentChart {
    fn check(&self, f: &GradedPoly) -> Result<()> {
        if f.chart() == self.chart() {
            Ok(())
        } else if f.chart().shift().is_none() {
            Err(Error::NotCotangent)
        } else {
            Err(Error::ChartMismatch)
        }
    }

    /// `{f_d, c}` for every coordinate `c`, `f_d` homogeneous of degree `d`.
    fn hamiltonian_images(&self, fd: &GradedPoly, d: i64) -> Vec<GradedPoly> {
        let n = self.shift();
        let m = self.base_dim();
        let chart = self.chart();
        let mut images = vec![GradedPoly::zero(chart); 2 * m];
        for q in 0..m {
            let i = chart.degree(q);
            let p = self.momentum(q);
            // {f,q} = (−1)^{(d−n)(i−n)} ∂f/∂p
            images[q] = signed(fd.partial(p), odd((d - n) * (i - n)));
            // {f,p} = −(−1)^{(d−n)i} (−1)^{i(n−i)} ∂f/∂q
            let neg = !(odd((d - n) * i) ^ self.epsilon_negative(q));
            images[p] = signed(fd.partial(q), neg);
        }
        images
    }

    /// The canonical degree `−n` Poisson bracket. Inhomogeneous `f` is split
    /// into homogeneous components.
    pub fn bracket(&self, f: &GradedPoly, g: &GradedPoly) -> Result<GradedPoly> {
        self.check(f)?;
        self.check(g)?;
        let mut out = GradedPoly::zero(self.chart());
        if f.is_zero() || g.is_zero() {
            return Ok(out);
        }
        let dg: Vec<GradedPoly> = (0..self.chart().dim()).map(|c| g.partial(c)).collect();
        for (d, fd) in f.homogeneous_components() {
            let images = self.hamiltonian_images(&fd, d);
            for (img, dgc) in images.iter().zip(&dg) {
                if !img.is_zero() && !dgc.is_zero() {
                    out += &(img * dgc);
                }
            }
        }
        Ok(out)
    }

    /// `X_f = {f, ·}` as a derivation of degree `|f| − n`.
    pub fn hamiltonian_vf(&self, f: &GradedPoly) -> Result<Derivation> {
        self.check(f)?;
        let d = f.require_degree("Hamiltonian")?;
        let images = self.hamiltonian_images(f, d);
        Derivation::new(self.chart(), d - self.shift(), images)
    }

    /// `J(X) = Σ_q X(q)·(−1)^{i(n−i)} p_q` for a vector field on the base.
    ///
    /// Accepts fields on the base chart, or on the full chart provided they
    /// preserve the base subalgebra and kill the momenta.
    pub fn j_map(&self, x: &Derivation) -> Result<GradedPoly> {
        let m = self.base_dim();
        let base_images: Vec<GradedPoly> = if x.chart() == self.base() {
            x.images()
                .iter()
                .map(|img| self.pullback(img))
                .collect::<Result<_>>()?
        } else if x.chart() == self.chart() {
            for (c, img) in x.images().iter().enumerate() {
                let bad = if self.is_momentum(c) {
                    !img.is_zero()
                } else {
                    !self.is_base_function(img)
                };
                if bad {
                    return Err(Error::NotTangentToBase);
                }
            }
            x.images()[..m].to_vec()
        } else {
            return Err(Error::ChartMismatch);
        };
        let mut out = GradedPoly::zero(self.chart());
        for (q, img) in base_images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let p = GradedPoly::var(self.chart(), self.momentum(q));
            out += &signed(img * &p, self.epsilon_negative(q));
        }
        Ok(out)
    }

    /// Inverse of [`j_map`](Self::j_map) on momentum-linear polynomials:
    /// the base vector field `X` with `J(X) = P`.
    pub fn j_inverse(&self, p: &GradedPoly) -> Result<Derivation> {
        self.check(p)?;
        let base = self.base();
        let degree = p.require_degree("multivector")? - self.shift();
        let mut images = vec![GradedPoly::zero(base); self.base_dim()];
        for (m, c) in p.terms() {
            let momenta: Vec<_> = m.factors().iter().filter(|(i, _)| self.is_momentum(*i)).collect();
            if momenta.len() != 1 || momenta[0].1 != 1 {
                return Err(Error::NotTangentToBase);
            }
            let q = momenta[0].0 - self.base_dim();
            let coeff = m.retain(|i| !self.is_momentum(i));
            let term = GradedPoly::monomial(base, coeff, c.clone());
            images[q] += &signed(term, self.epsilon_negative(q));
        }
        Derivation::new(base, degree, images)
    }

    /// Bracket values on every ordered pair of coordinates, as rendered
    /// strings. Only pairs with a nonzero value are listed.
    pub fn coordinate_table(&self) -> Vec<(String, String, String)> {
        let chart = self.chart();
        let mut out = Vec::new();
        for a in 0..chart.dim() {
            for b in 0..chart.dim() {
                let v = self
                    .bracket(&GradedPoly::var(chart, a), &GradedPoly::var(chart, b))
                    .expect("coordinates live on the chart");
                if !v.is_zero() {
                    let name = |i| GradedPoly::var(chart, i).to_string();
                    out.push((name(a), name(b), v.to_string()));
                }
            }
        }
        out
    }
}

/// Canonical bracket on a cotangent chart.
pub fn canonical_bracket(t: &CotangentChart, f: &GradedPoly, g: &GradedPoly) -> Result<GradedPoly> {
    t.bracket(f, g)
}

pub fn hamiltonian_vf(t: &CotangentChart, f: &GradedPoly) -> Result<Derivation> {
    t.hamiltonian_vf(f)
}

pub fn j_map(t: &CotangentChart, x: &Derivation) -> Result<GradedPoly> {
    t.j_map(x)
}

/// Momentum-free projection `0*`, landing on the base chart.
pub fn zero_section_pullback(t: &CotangentChart, f: &GradedPoly) -> Result<GradedPoly> {
    t.zero_section(f)
}

#[cfg(test)]
mod tests {
    use super::super::shift_cotangent;
    use super::*;
    use crate::graded::make_chart;

    #[test]
    fn darboux_pair() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let x = GradedPoly::var(t.chart(), 0);
        let p = GradedPoly::var(t.chart(), 1);
        let one = GradedPoly::one(t.chart());
        assert_eq!(t.bracket(&x, &p).unwrap(), -&one);
        assert_eq!(t.bracket(&p, &x).unwrap(), one);
        assert!(t.bracket(&x, &x.pow(2)).unwrap().is_zero());
    }

    #[test]
    fn coordinate_hamiltonian_fields() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let x = GradedPoly::var(t.chart(), 0);
        let p = GradedPoly::var(t.chart(), 1);
        let xq = t.hamiltonian_vf(&x).unwrap();
        assert_eq!(
            xq,
            Derivation::coordinate(t.chart(), 1).scale(&crate::graded::rat(-1, 1))
        );
        assert_eq!(
            t.hamiltonian_vf(&p).unwrap(),
            Derivation::coordinate(t.chart(), 0)
        );
        assert!(t.hamiltonian_vf(&GradedPoly::one(t.chart())).unwrap().is_zero());
    }

    #[test]
    fn j_of_coordinate_field() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let j = t.j_map(&Derivation::coordinate(&base, 0)).unwrap();
        assert_eq!(j, GradedPoly::var(t.chart(), 1));
        assert!(t.j_map(&Derivation::zero(&base, 0)).unwrap().is_zero());
    }

    #[test]
    fn plain_chart_is_rejected() {
        let base = make_chart(&[("x", 0)]).unwrap();
        let t = shift_cotangent(&base, 1).unwrap();
        let x = GradedPoly::var(&base, 0);
        assert_eq!(t.bracket(&x, &x), Err(Error::NotCotangent));
    }
}
