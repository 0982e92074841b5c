mod common;

use common::*;
use lagdef::graded::GradedPoly;
use lagdef::linfty::{
    decalage_sign, linfty_identity_residual, mc_residual, voronov_bracket, CanonicalVAlgebra, LinftyStructure,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn sign(p: GradedPoly, negative: bool) -> GradedPoly {
    if negative {
        -p
    } else {
        p
    }
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

fn inputs(r: &mut ChaCha8Rng, s: &LinftyStructure, k: usize) -> Vec<GradedPoly> {
    (0..k).map(|_| any_base_element(r, s, s.shift() + 1)).collect()
}

fn pick(r: &mut ChaCha8Rng) -> (String, LinftyStructure) {
    let mut all = all_structures();
    let i = r.gen_range(0..all.len());
    all.swap_remove(i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relations_hold_up_to_arity_three(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (name, s) in all_structures() {
            for m in 0..=3 {
                let xs = inputs(&mut r, &s, m);
                let res = linfty_identity_residual(&s, &xs, 4).unwrap();
                prop_assert!(res.is_zero(), "{name}, arity {m}: {res}");
            }
        }
    }

    #[test]
    fn brackets_match_jet_formula(seed in any::<u64>(), k in 0usize..=4) {
        let mut r = rng(seed);
        let (name, s) = pick(&mut r);
        let xs = inputs(&mut r, &s, k);
        prop_assert_eq!(s.bracket(&xs).unwrap(), s.bracket_jet(&xs).unwrap(), "{}", name);
    }

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), k in 2usize..=4) {
        let mut r = rng(seed);
        let (name, s) = pick(&mut r);
        let xs = inputs(&mut r, &s, k);
        let i = r.gen_range(0..k - 1);
        let mut swapped = xs.clone();
        swapped.swap(i, i + 1);
        let (a, b) = (s.linfty_degree(&xs[i]).unwrap(), s.linfty_degree(&xs[i + 1]).unwrap());
        prop_assert_eq!(
            s.bracket(&xs).unwrap(),
            sign(s.bracket(&swapped).unwrap(), !odd(a * b)),
            "{}", name
        );
    }

    #[test]
    fn derivation_in_last_slot(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let (name, s) = pick(&mut r);
        let n = s.shift();
        let mut xs = inputs(&mut r, &s, k - 1);
        let a = any_base_element(&mut r, &s, n);
        let b = any_base_element(&mut r, &s, n);
        let h_degree = n + 1 + xs.iter().map(|f| f.degree().unwrap() - n).sum::<i64>();
        let with = |xs: &mut Vec<GradedPoly>, last: GradedPoly| {
            xs.push(last);
            let v = s.bracket(xs).unwrap();
            xs.pop();
            v
        };
        let lhs = with(&mut xs, &a * &b);
        let rhs = &(&with(&mut xs, a.clone()) * &b)
            + &sign(&a * &with(&mut xs, b.clone()), odd((h_degree - n) * a.degree().unwrap()));
        prop_assert_eq!(lhs, rhs, "{}", name);
    }

    #[test]
    fn voronov_construction_after_decalage(seed in any::<u64>(), k in 0usize..=4) {
        let mut r = rng(seed);
        let (name, s) = pick(&mut r);
        let cot = s.cotangent();
        let xs = inputs(&mut r, &s, k);
        let lifted: Vec<GradedPoly> = xs.iter().map(|f| cot.pullback(f).unwrap()).collect();
        let v = voronov_bracket(&CanonicalVAlgebra::new(cot), s.theta(), &lifted).unwrap();
        let degrees: Vec<i64> = xs.iter().map(|f| s.linfty_degree(f).unwrap()).collect();
        let expected = cot.to_base(&v).unwrap();
        prop_assert_eq!(
            s.bracket(&xs).unwrap(),
            sign(expected, decalage_sign(&degrees) < 0),
            "{}", name
        );
    }

    #[test]
    fn schouten_reading_agrees(seed in any::<u64>(), k in 1usize..=4) {
        let mut r = rng(seed);
        let (name, s) = pick(&mut r);
        let xs = inputs(&mut r, &s, k);
        prop_assert_eq!(
            s.bracket(&xs).unwrap(),
            s.schouten_bracket_reading(&xs).unwrap(),
            "{}", name
        );
    }

    #[test]
    fn differential_squares_to_zero_when_strict(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (name, s) in strict_structures() {
            let f = any_base_element(&mut r, &s, s.shift() + 1);
            let df = s.differential(&f).unwrap();
            prop_assert_eq!(&df, &s.restricted_q(&f).unwrap(), "{}", name);
            prop_assert!(s.differential(&df).unwrap().is_zero(), "{name}");
        }
    }
}

#[test]
fn arity_four_relations_on_corpus() {
    let mut r = rng(4);
    for (name, s) in all_structures() {
        for _ in 0..6 {
            let xs = inputs(&mut r, &s, 4);
            let res = linfty_identity_residual(&s, &xs, 4).unwrap();
            assert!(res.is_zero(), "{name}: {res}");
        }
    }
}

#[test]
fn relations_on_all_generator_triples() {
    for (name, s) in all_structures() {
        let base = s.cotangent().base();
        let gens: Vec<GradedPoly> = (0..base.dim()).map(|i| GradedPoly::var(base, i)).collect();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let xs = [a.clone(), b.clone(), c.clone()];
                    let res = linfty_identity_residual(&s, &xs, 4).unwrap();
                    assert!(res.is_zero(), "{name}: {res}");
                }
            }
        }
    }
}

#[test]
fn curved_structure_is_genuinely_curved() {
    let s = curved();
    assert!(!s.is_strict());
    let (_, weil) = corpus_structure("weil-casimir");
    assert_eq!(
        s.curvature(),
        &mc_residual(&weil, &curving_element(&weil)).unwrap()
    );
    // the curvature term of the arity-one relation is live on some generator
    let base = s.cotangent().base();
    let mut live = false;
    for i in 0..base.dim() {
        let g = GradedPoly::var(base, i);
        live |= !s.bracket(&[s.curvature().clone(), g.clone()]).unwrap().is_zero();
        assert!(linfty_identity_residual(&s, &[g], 4).unwrap().is_zero());
    }
    assert!(live);
}

#[test]
fn arity_beyond_cap_is_refused() {
    let (_, s) = corpus_structure("so3-courant");
    let base = s.cotangent().base();
    let xs = vec![GradedPoly::var(base, 0); 5];
    assert!(linfty_identity_residual(&s, &xs, 4).is_err());
}
