mod common;

use common::*;
use lagdef::calculus::{
    euler_field, exterior_derivative, interior, is_homological, lie_bracket, one_form_closed, Derivation,
};
use lagdef::graded::{make_chart, Chart, GradedPoly};
use lagdef::sample::random_derivation;
use proptest::prelude::*;
use rand::Rng;

fn chart() -> Chart {
    make_chart(&[("x", 0), ("a", 1), ("b", 1), ("u", 2)]).unwrap()
}

fn sign(p: GradedPoly, negative: bool) -> GradedPoly {
    if negative {
        -p
    } else {
        p
    }
}

fn field(r: &mut rand_chacha::ChaCha8Rng, c: &Chart) -> Derivation {
    let k = r.gen_range(-2..=2);
    random_derivation(r, c, k, &small())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let c = chart();
        let mut r = rng(seed);
        let x = field(&mut r, &c);
        let f = any_poly(&mut r, &c, 3);
        let g = any_poly(&mut r, &c, 3);
        let lhs = x.apply(&(&f * &g)).unwrap();
        let twist = x.degree() * f.degree().unwrap() % 2 != 0;
        let rhs = &(&x.apply(&f).unwrap() * &g) + &sign(&f * &x.apply(&g).unwrap(), twist);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_acts_as_composition(seed in any::<u64>()) {
        let c = chart();
        let mut r = rng(seed);
        let x = field(&mut r, &c);
        let y = field(&mut r, &c);
        let f = any_poly(&mut r, &c, 3);
        let xy = lie_bracket(&x, &y).unwrap();
        prop_assert_eq!(xy.degree(), x.degree() + y.degree());
        let composed = &x.apply(&y.apply(&f).unwrap()).unwrap()
            - &sign(y.apply(&x.apply(&f).unwrap()).unwrap(), x.degree() * y.degree() % 2 != 0);
        prop_assert_eq!(xy.apply(&f).unwrap(), composed);
    }

    #[test]
    fn jacobi_for_vector_fields(seed in any::<u64>()) {
        let c = chart();
        let mut r = rng(seed);
        let (x, y, z) = (field(&mut r, &c), field(&mut r, &c), field(&mut r, &c));
        let lhs = lie_bracket(&x, &lie_bracket(&y, &z).unwrap()).unwrap();
        let a = lie_bracket(&lie_bracket(&x, &y).unwrap(), &z).unwrap();
        let b = lie_bracket(&y, &lie_bracket(&x, &z).unwrap()).unwrap();
        let b = if x.degree() * y.degree() % 2 != 0 { b.scale(&lagdef::graded::rat(-1, 1)) } else { b };
        prop_assert_eq!(lhs, a.add(&b).unwrap());
    }

    #[test]
    fn euler_field_counts_degree(seed in any::<u64>()) {
        let c = chart();
        let mut r = rng(seed);
        let f = any_poly(&mut r, &c, 4);
        let e = euler_field(&c);
        prop_assert_eq!(e.apply(&f).unwrap(), f.scale_int(f.degree().unwrap()));
    }

    #[test]
    fn contraction_with_differential(seed in any::<u64>()) {
        let c = chart();
        let mut r = rng(seed);
        let x = field(&mut r, &c);
        let f = any_poly(&mut r, &c, 3);
        let df = exterior_derivative(&f);
        prop_assert!(one_form_closed(&df));
        prop_assert_eq!(interior(&x, &df).unwrap(), x.apply(&f).unwrap());
    }

    #[test]
    fn homological_iff_square_vanishes(seed in any::<u64>()) {
        let c = chart();
        let mut r = rng(seed);
        let q = random_derivation(&mut r, &c, 1, &small());
        let f = any_poly(&mut r, &c, 3);
        let qq = q.apply(&q.apply(&f).unwrap()).unwrap();
        let half = lie_bracket(&q, &q).unwrap().apply(&f).unwrap().scale(&lagdef::graded::rat(1, 2));
        prop_assert_eq!(qq, half);
        if is_homological(&q).unwrap() {
            prop_assert!(lie_bracket(&q, &q).unwrap().is_zero());
        }
    }
}

#[test]
fn de_rham_differential_is_homological() {
    // d on T[1]R^2: x ↦ dx, y ↦ dy
    let c = make_chart(&[("x", 0), ("y", 0), ("dx", 1), ("dy", 1)]).unwrap();
    let images = vec![
        GradedPoly::var(&c, 2),
        GradedPoly::var(&c, 3),
        GradedPoly::zero(&c),
        GradedPoly::zero(&c),
    ];
    let d = Derivation::new(&c, 1, images).unwrap();
    assert!(is_homological(&d).unwrap());
    let x = GradedPoly::var(&c, 0);
    let bad = Derivation::new(
        &c,
        1,
        vec![
            GradedPoly::var(&c, 2),
            GradedPoly::zero(&c),
            &x * &GradedPoly::var(&c, 2) * GradedPoly::var(&c, 3),
            GradedPoly::zero(&c),
        ],
    )
    .unwrap();
    assert!(!is_homological(&bad).unwrap());
}
