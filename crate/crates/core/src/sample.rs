//! Seeded random generators for homogeneous polynomials, vector fields and
//! 1-forms, used by property tests and acceptance runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::calculus::{Derivation, OneForm};
use crate::graded::{rat, Chart, GradedPoly, Monomial};

/// Shape limits for random elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_terms: usize,
    pub max_coeff: i64,
    /// Cap on the total exponent of degree-zero coordinates per monomial.
    pub max_body_power: u32,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_terms: 3,
            max_coeff: 3,
            max_body_power: 2,
        }
    }
}

/// All monomials of total degree `degree` whose degree-zero part has total
/// exponent at most `max_body_power`, over the coordinates selected by `use_coord`.
pub fn monomials_of_degree(
    chart: &Chart,
    degree: i64,
    max_body_power: u32,
    use_coord: impl Fn(usize) -> bool,
) -> Vec<Monomial> {
    let coords: Vec<usize> = (0..chart.dim()).filter(|&i| use_coord(i)).collect();
    let mut out = Vec::new();
    let mut current: Vec<(usize, u32)> = Vec::new();
    fn rec(
        chart: &Chart,
        coords: &[usize],
        pos: usize,
        remaining: i64,
        body_left: u32,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if pos == coords.len() {
            if remaining == 0 {
                if let Some(m) = Monomial::from_sorted(chart, current.clone()) {
                    out.push(m);
                }
            }
            return;
        }
        let c = coords[pos];
        let d = chart.degree(c);
        let max_exp = if d == 0 {
            body_left
        } else if chart.is_odd(c) {
            u32::from(remaining >= d)
        } else {
            (remaining / d) as u32
        };
        for e in 0..=max_exp {
            let rem = remaining - d * e as i64;
            if rem < 0 {
                break;
            }
            let body = if d == 0 { body_left - e } else { body_left };
            if e > 0 {
                current.push((c, e));
            }
            rec(chart, coords, pos + 1, rem, body, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }
    if degree >= 0 {
        rec(chart, &coords, 0, degree, max_body_power, &mut current, &mut out);
    }
    out
}

fn random_coefficient<R: Rng>(rng: &mut R, shape: &Shape) -> crate::graded::Rational {
    loop {
        let n = rng.gen_range(-shape.max_coeff..=shape.max_coeff);
        if n != 0 {
            // occasionally a genuine fraction
            let d = if rng.gen_bool(0.2) { 2 } else { 1 };
            return rat(n, d);
        }
    }
}

/// Random polynomial of the given degree drawn from `pool`; zero if the pool
/// is empty.
pub fn random_from_pool<R: Rng>(rng: &mut R, chart: &Chart, pool: &[Monomial], shape: &Shape) -> GradedPoly {
    let mut p = GradedPoly::zero(chart);
    if pool.is_empty() {
        return p;
    }
    let terms = rng.gen_range(1..=shape.max_terms);
    for m in pool.choose_multiple(rng, terms) {
        p.add_term(m.clone(), random_coefficient(rng, shape));
    }
    p
}

/// Random homogeneous polynomial of degree `degree` on `chart`.
pub fn random_poly<R: Rng>(rng: &mut R, chart: &Chart, degree: i64, shape: &Shape) -> GradedPoly {
    let pool = monomials_of_degree(chart, degree, shape.max_body_power, |_| true);
    random_from_pool(rng, chart, &pool, shape)
}

/// Random homogeneous polynomial of a degree drawn from `degrees`.
pub fn random_poly_any<R: Rng>(
    rng: &mut R,
    chart: &Chart,
    degrees: std::ops::RangeInclusive<i64>,
    shape: &Shape,
) -> GradedPoly {
    let d = rng.gen_range(degrees);
    random_poly(rng, chart, d, shape)
}

/// Random vector field of degree `degree`.
pub fn random_derivation<R: Rng>(rng: &mut R, chart: &Chart, degree: i64, shape: &Shape) -> Derivation {
    let images = (0..chart.dim())
        .map(|i| {
            if rng.gen_bool(0.3) {
                GradedPoly::zero(chart)
            } else {
                random_poly(rng, chart, chart.degree(i) + degree, shape)
            }
        })
        .collect();
    Derivation::new(chart, degree, images).expect("images have matching degrees")
}

/// Random 1-form whose components satisfy `|c| + |α_c| = degree`.
pub fn random_one_form<R: Rng>(rng: &mut R, chart: &Chart, degree: i64, shape: &Shape) -> OneForm {
    let comps = (0..chart.dim())
        .map(|i| random_poly(rng, chart, degree - chart.degree(i), shape))
        .collect();
    OneForm::new(chart, comps).expect("components live on the chart")
}
