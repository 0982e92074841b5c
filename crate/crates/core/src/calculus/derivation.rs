use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{Chart, GradedPoly, Rational};

/// A graded vector field, stored by its images on the coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    chart: Chart,
    degree: i64,
    images: Vec<GradedPoly>,
}

impl Derivation {
    /// `images[i]` is the value on coordinate `i`; each must be zero or of
    /// degree `|c_i| + degree`.
    pub fn new(chart: &Chart, degree: i64, images: Vec<GradedPoly>) -> Result<Derivation> {
        assert_eq!(images.len(), chart.dim(), "one image per coordinate");
        for (i, img) in images.iter().enumerate() {
            if img.chart() != chart {
                return Err(Error::ChartMismatch);
            }
            img.expect_degree(
                &format!("image of `{}`", chart.coordinate(i).name),
                chart.degree(i) + degree,
            )?;
        }
        Ok(Derivation {
            chart: chart.clone(),
            degree,
            images,
        })
    }

    pub fn zero(chart: &Chart, degree: i64) -> Derivation {
        Derivation {
            chart: chart.clone(),
            degree,
            images: vec![GradedPoly::zero(chart); chart.dim()],
        }
    }

    /// The coordinate field `∂/∂c`.
    pub fn coordinate(chart: &Chart, index: usize) -> Derivation {
        let mut d = Derivation::zero(chart, -chart.degree(index));
        d.images[index] = GradedPoly::one(chart);
        d
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn images(&self) -> &[GradedPoly] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &GradedPoly {
        &self.images[index]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(GradedPoly::is_zero)
    }

    /// `X(f) = Σ_c X(c)·∂f/∂c`.
    pub fn apply(&self, f: &GradedPoly) -> Result<GradedPoly> {
        if f.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        let mut out = GradedPoly::zero(&self.chart);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out += &(img * &d);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                context: "sum of derivations".into(),
                expected: self.degree,
                found: other.degree.to_string(),
            });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(Derivation {
            chart: self.chart.clone(),
            degree,
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            chart: self.chart.clone(),
            degree: self.degree,
            images: self.images.iter().map(|g| g.scale(c)).collect(),
        }
    }

    /// Left multiplication `g·X`, a derivation of degree `|g| + |X|`.
    pub fn left_mul(&self, g: &GradedPoly) -> Result<Derivation> {
        let dg = g.require_degree("coefficient")?;
        let images = self
            .images
            .iter()
            .map(|img| g.multiply(img))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation {
            chart: self.chart.clone(),
            degree: self.degree + dg,
            images,
        })
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[deg {}](", self.degree)?;
        let mut first = true;
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{} -> {}", self.chart.coordinate(i).name, img)?;
        }
        write!(f, ")")
    }
}

fn koszul(a: i64, b: i64) -> bool {
    (a * b).rem_euclid(2) == 1
}

/// Left partial derivative with respect to coordinate `index`.
pub fn partial_derivative(f: &GradedPoly, index: usize) -> GradedPoly {
    f.partial(index)
}

/// Applies `X` to `f`.
pub fn apply_derivation(x: &Derivation, f: &GradedPoly) -> Result<GradedPoly> {
    x.apply(f)
}

/// Graded commutator `[X,Y] = XY − (−1)^{|X||Y|} YX`.
pub fn lie_bracket(x: &Derivation, y: &Derivation) -> Result<Derivation> {
    if x.chart != y.chart {
        return Err(Error::ChartMismatch);
    }
    let sign_neg = koszul(x.degree, y.degree);
    let mut images = Vec::with_capacity(x.chart.dim());
    for i in 0..x.chart.dim() {
        let xy = x.apply(&y.images[i])?;
        let yx = y.apply(&x.images[i])?;
        images.push(if sign_neg { &xy + &yx } else { &xy - &yx });
    }
    Ok(Derivation {
        chart: x.chart.clone(),
        degree: x.degree + y.degree,
        images,
    })
}

/// Whether a degree-one field squares to zero.
pub fn is_homological(q: &Derivation) -> Result<bool> {
    if q.degree != 1 {
        return Err(Error::NotDegreeOne(q.degree));
    }
    Ok(lie_bracket(q, q)?.is_zero())
}

/// `E(c) = |c|·c`.
pub fn euler_field(chart: &Chart) -> Derivation {
    let images = (0..chart.dim())
        .map(|i| GradedPoly::var(chart, i).scale_int(chart.degree(i)))
        .collect();
    Derivation {
        chart: chart.clone(),
        degree: 0,
        images,
    }
}
