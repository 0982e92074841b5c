use super::mc::{chain_from, inverse_factorial, mc_residual};
use super::relations::{antisymmetric_koszul, MultiBracket, Vector};
use super::structure::LinftyStructure;
use crate::error::{Error, Result};
use crate::graded::{odd, rat, signed, GradedPoly};

/// An element `g + f` of base functions (shifted by `n−1`) plus functions on
/// the cotangent chart (shifted by `n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    pub base: GradedPoly,
    pub ambient: GradedPoly,
}

impl ExtElem {
    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.ambient.is_zero()
    }
}

impl Vector for ExtElem {
    fn plus(&self, other: &Self) -> Self {
        ExtElem {
            base: &self.base + &other.base,
            ambient: &self.ambient + &other.ambient,
        }
    }
    fn negated(&self) -> Self {
        ExtElem {
            base: -&self.base,
            ambient: -&self.ambient,
        }
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

/// L∞ structure on base functions ⊕ ambient functions for a strict `θ`,
/// whose Maurer-Cartan elements are simultaneous deformations of the zero
/// section and of `θ`.
#[derive(Clone, Debug)]
pub struct ExtendedStructure {
    s: LinftyStructure,
}

/// One homogeneous summand of an argument.
#[derive(Clone)]
enum Piece {
    Base(GradedPoly),
    Ambient(GradedPoly),
}

impl ExtendedStructure {
    pub fn new(s: &LinftyStructure) -> Result<ExtendedStructure> {
        if !s.is_strict() {
            return Err(Error::NotStrict {
                curvature: s.curvature().clone(),
            });
        }
        Ok(ExtendedStructure { s: s.clone() })
    }

    pub fn structure(&self) -> &LinftyStructure {
        &self.s
    }

    pub fn base_elem(&self, g: GradedPoly) -> ExtElem {
        ExtElem {
            base: g,
            ambient: GradedPoly::zero(self.s.cotangent().chart()),
        }
    }

    pub fn ambient_elem(&self, f: GradedPoly) -> ExtElem {
        ExtElem {
            base: GradedPoly::zero(self.s.cotangent().base()),
            ambient: f,
        }
    }

    fn zero_elem(&self) -> ExtElem {
        self.base_elem(GradedPoly::zero(self.s.cotangent().base()))
    }

    fn check(&self, x: &ExtElem) -> Result<()> {
        let cot = self.s.cotangent();
        if x.base.chart() != cot.base() || x.ambient.chart() != cot.chart() {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    fn piece_degree(&self, p: &Piece) -> i64 {
        let n = self.s.shift();
        match p {
            Piece::Base(g) => g.degree().expect("homogeneous piece") - n + 1,
            Piece::Ambient(f) => f.degree().expect("homogeneous piece") - n,
        }
    }

    fn pieces(x: &ExtElem) -> Vec<Piece> {
        let mut out: Vec<Piece> = x
            .base
            .homogeneous_components()
            .into_values()
            .map(Piece::Base)
            .collect();
        out.extend(
            x.ambient
                .homogeneous_components()
                .into_values()
                .map(Piece::Ambient),
        );
        out
    }

    /// The bracket on a single pattern of homogeneous pieces.
    fn pattern(&self, pieces: &[Piece]) -> Result<ExtElem> {
        let cot = self.s.cotangent();
        let n = self.s.shift();
        let k = pieces.len();
        let ambient_at: Vec<usize> = (0..k)
            .filter(|&i| matches!(pieces[i], Piece::Ambient(_)))
            .collect();
        match ambient_at.len() {
            0 => {
                let args: Vec<GradedPoly> = pieces
                    .iter()
                    .map(|p| match p {
                        Piece::Base(g) => g.clone(),
                        Piece::Ambient(_) => unreachable!(),
                    })
                    .collect();
                Ok(self.base_elem(self.s.bracket(&args)?))
            }
            1 => {
                let j = ambient_at[0];
                let degrees: Vec<i64> = pieces.iter().map(|p| self.piece_degree(p)).collect();
                let mut seq = vec![j];
                seq.extend((0..k).filter(|&i| i != j));
                let negative = antisymmetric_koszul(&degrees, &seq);
                let Piece::Ambient(f) = &pieces[j] else {
                    unreachable!()
                };
                let gs: Vec<GradedPoly> = seq[1..]
                    .iter()
                    .map(|&i| match &pieces[i] {
                        Piece::Base(g) => g.clone(),
                        Piece::Ambient(_) => unreachable!(),
                    })
                    .collect();
                let value = if gs.is_empty() {
                    // L^1(f) = 0*f − {θ,f}
                    ExtElem {
                        base: cot.zero_section(f)?,
                        ambient: -cot.bracket(self.s.theta(), f)?,
                    }
                } else {
                    let m = gs.len() as i64;
                    let mut e = m * (f.degree().expect("homogeneous piece") - n + 1);
                    for (i, g) in gs.iter().enumerate() {
                        e += (m - 1 - i as i64) * (g.degree().expect("homogeneous piece") - n);
                    }
                    let h = self.s.nested(f, &gs)?;
                    self.base_elem(signed(cot.zero_section(&h)?, odd(e)))
                };
                Ok(if negative { value.negated() } else { value })
            }
            2 if k == 2 => {
                let (Piece::Ambient(f1), Piece::Ambient(f2)) = (&pieces[0], &pieces[1]) else {
                    unreachable!()
                };
                Ok(self.ambient_elem(-cot.bracket(f1, f2)?))
            }
            _ => Ok(self.zero_elem()),
        }
    }

    /// `L^k(x_1,…,x_k)`, multilinear in arbitrary (possibly mixed) arguments.
    pub fn bracket(&self, args: &[ExtElem]) -> Result<ExtElem> {
        for x in args {
            self.check(x)?;
        }
        let split: Vec<Vec<Piece>> = args.iter().map(Self::pieces).collect();
        let mut out = self.zero_elem();
        if split.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut idx = vec![0usize; args.len()];
        loop {
            let pick: Vec<Piece> = idx.iter().zip(&split).map(|(&i, p)| p[i].clone()).collect();
            out = out.plus(&self.pattern(&pick)?);
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < split[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// `Σ_{k≥1} L^k(x,…,x)/k!` evaluated directly by multilinear expansion.
    pub fn mc_sum(&self, x: &ExtElem) -> Result<ExtElem> {
        let top = self.s.top_arity().max(x.ambient.momentum_degree() as usize) + 2;
        let mut out = self.zero_elem();
        for k in 1..=top {
            let args = vec![x.clone(); k];
            let term = self.bracket(&args)?;
            out = out.plus(&ExtElem {
                base: term.base.scale(&inverse_factorial(k)),
                ambient: term.ambient.scale(&inverse_factorial(k)),
            });
        }
        Ok(out)
    }
}

impl MultiBracket for ExtendedStructure {
    type Elem = ExtElem;

    fn degree(&self, x: &ExtElem) -> Result<i64> {
        let pieces = Self::pieces(x);
        let mut degrees = pieces.iter().map(|p| self.piece_degree(p));
        let Some(first) = degrees.next() else {
            return Ok(0);
        };
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::Inhomogeneous("extended element".into()))
        }
    }

    fn bracket(&self, args: &[ExtElem]) -> Result<ExtElem> {
        ExtendedStructure::bracket(self, args)
    }

    fn zero(&self) -> ExtElem {
        self.zero_elem()
    }
}

/// The two equations for a simultaneous deformation `f + θ_t`:
/// `({θ,θ_t} + ½{θ_t,θ_t}, Σ_k (l^k(f,…,f) + L^{k+1}(θ_t,f,…,f))/k!)`.
pub fn mc_extended_residual(
    s: &LinftyStructure,
    f: &GradedPoly,
    theta_t: &GradedPoly,
) -> Result<(GradedPoly, GradedPoly)> {
    if !s.is_strict() {
        return Err(Error::NotStrict {
            curvature: s.curvature().clone(),
        });
    }
    let cot = s.cotangent();
    if theta_t.chart() != cot.chart() {
        return Err(Error::ChartMismatch);
    }
    theta_t.expect_degree("theta deformation", s.shift() + 1)?;
    let first = &cot.bracket(s.theta(), theta_t)? + &cot.bracket(theta_t, theta_t)?.scale(&rat(1, 2));
    let mut second = mc_residual(s, f)?;
    // L^{k+1}(θ_t, f,…,f) carries sign +1 for |f| = n, |θ_t| = n+1
    for (k, h) in chain_from(cot, theta_t, f)?.iter().enumerate() {
        second += &cot.zero_section(h)?.scale(&inverse_factorial(k));
    }
    Ok((first, second))
}
