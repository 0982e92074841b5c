use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chart::{Chart, Role};
use super::monomial::Monomial;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact-rational linear combination of normal-ordered monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPoly {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(chart: &Chart) -> GradedPoly {
        GradedPoly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rational) -> GradedPoly {
        GradedPoly::monomial(chart, Monomial::one(), c)
    }

    pub fn one(chart: &Chart) -> GradedPoly {
        GradedPoly::constant(chart, Rational::one())
    }

    pub fn var(chart: &Chart, index: usize) -> GradedPoly {
        assert!(index < chart.dim(), "coordinate index out of range");
        GradedPoly::monomial(chart, Monomial::var(index), Rational::one())
    }

    pub fn var_named(chart: &Chart, name: &str) -> Result<GradedPoly> {
        Ok(GradedPoly::var(chart, chart.lookup(name)?))
    }

    pub fn monomial(chart: &Chart, m: Monomial, c: Rational) -> GradedPoly {
        let mut p = GradedPoly::zero(chart);
        p.add_term(m, c);
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_chart(&self, other: &GradedPoly) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(Error::ChartMismatch)
        }
    }

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.chart);
        }
        GradedPoly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> GradedPoly {
        self.scale(&Rational::from_integer(BigInt::from(c)))
    }

    /// Normal-ordered product.
    pub fn multiply(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_chart(other)?;
        let mut out = GradedPoly::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((negative, m)) = ma.mul(mb, &self.chart) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut out = GradedPoly::one(&self.chart);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Common degree of all terms; the zero polynomial reports 0. `None` when
    /// the terms have different degrees.
    pub fn degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|m| m.degree(&self.chart));
        let first = match degrees.next() {
            None => return Some(0),
            Some(d) => d,
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Like [`degree`](Self::degree) but as an error naming `what`.
    pub fn require_degree(&self, what: &str) -> Result<i64> {
        self.degree()
            .ok_or_else(|| Error::Inhomogeneous(what.to_string()))
    }

    /// Fails unless `self` is zero or homogeneous of degree `expected`.
    pub fn expect_degree(&self, what: &str, expected: i64) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        match self.degree() {
            Some(d) if d == expected => Ok(()),
            Some(d) => Err(Error::DegreeMismatch {
                context: what.to_string(),
                expected,
                found: d.to_string(),
            }),
            None => Err(Error::DegreeMismatch {
                context: what.to_string(),
                expected,
                found: "inhomogeneous".into(),
            }),
        }
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, GradedPoly> {
        let mut out: BTreeMap<i64, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree(&self.chart))
                .or_insert_with(|| GradedPoly::zero(&self.chart))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Splits by total exponent of momentum coordinates.
    pub fn momentum_components(&self) -> BTreeMap<u32, GradedPoly> {
        let mut out: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.count_where(|i| self.chart.role(i) == Role::Momentum);
            out.entry(k)
                .or_insert_with(|| GradedPoly::zero(&self.chart))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Highest total momentum exponent among the terms (0 for zero).
    pub fn momentum_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.count_where(|i| self.chart.role(i) == Role::Momentum))
            .max()
            .unwrap_or(0)
    }

    /// Left partial derivative with respect to coordinate `index`.
    pub fn partial(&self, index: usize) -> GradedPoly {
        let mut out = GradedPoly::zero(&self.chart);
        for (m, c) in &self.terms {
            if let Some((exp, negative, rest)) = m.differentiate(index, &self.chart) {
                let v = c * Rational::from_integer(BigInt::from(exp));
                out.add_term(rest, if negative { -v } else { v });
            }
        }
        out
    }

    /// Keeps the terms whose monomials satisfy `pred`.
    pub fn filter_terms(&self, mut pred: impl FnMut(&Monomial) -> bool) -> GradedPoly {
        GradedPoly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Image under the algebra morphism sending coordinate `i` to `images[i]`,
    /// all images living on `target`. Each image must be zero or homogeneous of
    /// the coordinate's degree.
    pub fn map_to(&self, target: &Chart, images: &[GradedPoly]) -> Result<GradedPoly> {
        assert_eq!(images.len(), self.chart.dim(), "one image per coordinate");
        for (i, img) in images.iter().enumerate() {
            if img.chart != *target {
                return Err(Error::ChartMismatch);
            }
            let coord = self.chart.coordinate(i);
            img.expect_degree(&format!("image of `{}`", coord.name), coord.degree as i64)?;
        }
        Ok(self.map_unchecked(target, images))
    }

    pub(crate) fn map_unchecked(&self, target: &Chart, images: &[GradedPoly]) -> GradedPoly {
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = GradedPoly::constant(target, c.clone());
            for &(i, e) in m.factors() {
                for _ in 0..e {
                    acc = &acc * &images[i];
                    if acc.is_zero() {
                        break;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Substitutes the assigned coordinates, leaving the others fixed.
    pub fn substitute(&self, assignment: &BTreeMap<usize, GradedPoly>) -> Result<GradedPoly> {
        let images: Vec<GradedPoly> = (0..self.chart.dim())
            .map(|i| {
                assignment
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| GradedPoly::var(&self.chart, i))
            })
            .collect();
        self.map_to(&self.chart, &images)
    }

    /// Substitution keyed by coordinate name.
    pub fn substitute_named(&self, assignment: &[(&str, GradedPoly)]) -> Result<GradedPoly> {
        let mut map = BTreeMap::new();
        for (name, value) in assignment {
            map.insert(self.chart.lookup(name)?, value.clone());
        }
        self.substitute(&map)
    }

    /// Moves the polynomial to another chart by a coordinate index map that
    /// preserves relative order of the coordinates involved.
    pub(crate) fn reindexed(&self, target: &Chart, map: impl Fn(usize) -> usize) -> GradedPoly {
        GradedPoly {
            chart: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.reindex(&map), c.clone()))
                .collect(),
        }
    }
}

fn write_coord(f: &mut fmt::Formatter<'_>, chart: &Chart, i: usize) -> fmt::Result {
    let c = chart.coordinate(i);
    match (c.role, chart.partner(i)) {
        (Role::Momentum, Some(q)) => write!(f, "p({})", chart.coordinate(q).name),
        _ => write!(f, "{}", c.name),
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, chart: &Chart, m: &Monomial) -> fmt::Result {
    for (k, &(i, e)) in m.factors().iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        write_coord(f, chart, i)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Renders in the scenario expression grammar, e.g. `x^2 - 1/2*a*b + p(x)`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, &self.chart, m)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, &self.chart, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({self})")
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.try_add(rhs).expect("chart mismatch in addition")
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(mut self, rhs: GradedPoly) -> GradedPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        assert!(self.chart == rhs.chart, "chart mismatch in addition");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &GradedPoly) {
        assert!(self.chart == rhs.chart, "chart mismatch in subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(mut self, rhs: GradedPoly) -> GradedPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.multiply(rhs).expect("chart mismatch in multiplication")
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}
