#![allow(dead_code)]

use lagdef::graded::{make_chart, Chart, GradedPoly};
use lagdef::linfty::{exp_flow, LinftyStructure};
use lagdef::sample::{monomials_of_degree, random_from_pool, random_poly, Shape};
use lagdef::scenario::{corpus, ElementValue, Scenario};
use lagdef::symplectic::{shift_cotangent, CotangentChart};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small() -> Shape {
    Shape {
        max_terms: 3,
        max_coeff: 3,
        max_body_power: 2,
    }
}

/// Base chart with one coordinate of each degree up to `n` (two in degree 0).
pub fn graded_base(n: i64) -> Chart {
    let names = [("x", 0), ("y", 0), ("a", 1), ("u", 2), ("w", 3)];
    let decls: Vec<(&str, i64)> = names.iter().copied().filter(|(_, d)| *d <= n).collect();
    make_chart(&decls).unwrap()
}

pub fn cotangent(n: i64) -> CotangentChart {
    shift_cotangent(&graded_base(n), n).unwrap()
}

/// Random homogeneous polynomial of a random degree in `0..=max_degree`.
pub fn any_poly(rng: &mut ChaCha8Rng, chart: &Chart, max_degree: i64) -> GradedPoly {
    let d = rng.gen_range(0..=max_degree);
    random_poly(rng, chart, d, &small())
}

/// A curved structure: the Weil Hamiltonian moved off the zero section by
/// the flow of `eh1*e1`, which is not MC. Its curvature `eh1^2` is not
/// central, so the curvature terms of the relations are live.
pub fn curved() -> LinftyStructure {
    let (_, s) = corpus_structure("weil-casimir");
    curved_by(&s)
}

pub fn curving_element(s: &LinftyStructure) -> GradedPoly {
    let base = s.cotangent().base();
    let var = |name| GradedPoly::var(base, base.index_of(name).unwrap());
    &var("eh1") * &var("e1")
}

fn curved_by(s: &LinftyStructure) -> LinftyStructure {
    let theta = exp_flow(s.cotangent(), &curving_element(s), s.theta()).unwrap();
    LinftyStructure::new(s.cotangent(), theta).unwrap()
}

pub fn corpus_structure(name: &str) -> (Scenario, LinftyStructure) {
    let sc = lagdef::scenario::corpus_entry(name).unwrap().scenario();
    let s = LinftyStructure::new(sc.cotangent(), sc.theta().clone()).unwrap();
    (sc, s)
}

/// Every corpus structure plus the curved one.
pub fn all_structures() -> Vec<(String, LinftyStructure)> {
    let mut out: Vec<(String, LinftyStructure)> = corpus()
        .iter()
        .map(|e| (e.name.to_string(), corpus_structure(e.name).1))
        .collect();
    out.push(("curved".into(), curved()));
    out
}

pub fn strict_structures() -> Vec<(String, LinftyStructure)> {
    all_structures()
        .into_iter()
        .filter(|(_, s)| s.is_strict())
        .collect()
}

pub fn element(sc: &Scenario, name: &str) -> GradedPoly {
    match &sc.element(name).unwrap().value {
        ElementValue::Poly(p) => p.clone(),
        _ => panic!("`{name}` is not a polynomial element"),
    }
}

/// Random base function of total degree `degree`, built from monomials with
/// few factors so nested brackets stay small.
pub fn base_element(rng: &mut ChaCha8Rng, s: &LinftyStructure, degree: i64) -> GradedPoly {
    let base = s.cotangent().base();
    let pool: Vec<_> = monomials_of_degree(base, degree, 1, |_| true)
        .into_iter()
        .filter(|m| m.factors().len() <= 3)
        .collect();
    random_from_pool(rng, base, &pool, &small())
}

/// Random base function whose degree is drawn so that the pool is nonempty
/// where possible; degrees range over `0..=max`.
pub fn any_base_element(rng: &mut ChaCha8Rng, s: &LinftyStructure, max: i64) -> GradedPoly {
    for _ in 0..8 {
        let d = rng.gen_range(0..=max);
        let f = base_element(rng, s, d);
        if !f.is_zero() {
            return f;
        }
    }
    GradedPoly::one(s.cotangent().base())
}
