mod common;

use common::*;
use lagdef::calculus::{exterior_derivative, lie_bracket, Derivation, OneForm};
use lagdef::graded::GradedPoly;
use lagdef::sample::{random_derivation, random_one_form, random_poly, Shape};
use lagdef::symplectic::{schouten_bracket, CotangentChart, Multivector};
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

/// A random homogeneous function on the cotangent chart of degree in `0..=n+2`.
fn ambient(r: &mut ChaCha8Rng, t: &CotangentChart) -> GradedPoly {
    let shape = Shape {
        max_terms: 3,
        max_coeff: 3,
        max_body_power: 2,
    };
    let d = r.gen_range(0..=t.shift() + 2);
    random_poly(r, t.chart(), d, &shape)
}

fn base_field(r: &mut ChaCha8Rng, t: &CotangentChart) -> Derivation {
    let k = r.gen_range(-t.shift()..=1);
    random_derivation(r, t.base(), k, &small())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_graded_poisson(seed in any::<u64>(), n in 1i64..=3) {
        let t = cotangent(n);
        let mut r = rng(seed);
        let (f, g, h) = (ambient(&mut r, &t), ambient(&mut r, &t), ambient(&mut r, &t));
        let (df, dg) = (f.degree().unwrap() - n, g.degree().unwrap() - n);
        let fg = t.bracket(&f, &g).unwrap();
        // skew symmetry
        prop_assert_eq!(&fg, &sign(t.bracket(&g, &f).unwrap(), !odd(df * dg)));
        // Leibniz in the second slot
        let lhs = t.bracket(&f, &(&g * &h)).unwrap();
        let rhs = &(&fg * &h) + &sign(&g * &t.bracket(&f, &h).unwrap(), odd(df * (dg + n)));
        prop_assert_eq!(lhs, rhs);
        // Jacobi
        let lhs = t.bracket(&f, &t.bracket(&g, &h).unwrap()).unwrap();
        let rhs = &t.bracket(&fg, &h).unwrap()
            + &sign(t.bracket(&g, &t.bracket(&f, &h).unwrap()).unwrap(), odd(df * dg));
        prop_assert_eq!(lhs, rhs);
        // Hamiltonian vector field
        prop_assert_eq!(t.hamiltonian_vf(&f).unwrap().apply(&g).unwrap(), fg);
    }

    #[test]
    fn j_map_is_a_homomorphism(seed in any::<u64>(), n in 1i64..=3) {
        let t = cotangent(n);
        let mut r = rng(seed);
        let x = base_field(&mut r, &t);
        let y = base_field(&mut r, &t);
        let f = any_poly(&mut r, t.base(), n + 1);
        let (jx, jy) = (t.j_map(&x).unwrap(), t.j_map(&y).unwrap());
        prop_assert_eq!(t.j_map(&lie_bracket(&x, &y).unwrap()).unwrap(), t.bracket(&jx, &jy).unwrap());
        prop_assert_eq!(
            t.bracket(&jx, &t.pullback(&f).unwrap()).unwrap(),
            t.pullback(&x.apply(&f).unwrap()).unwrap()
        );
        if !x.is_zero() {
            prop_assert_eq!(t.j_inverse(&jx).unwrap(), x);
        }
    }

    #[test]
    fn schouten_through_j(seed in any::<u64>(), n in 1i64..=3) {
        let t = cotangent(n);
        let mut r = rng(seed);
        let x = base_field(&mut r, &t);
        let f = any_poly(&mut r, t.base(), n);
        let mx = Multivector::from_vector_field(&t, &x).unwrap();
        let mf = Multivector::from_function(&t, &f).unwrap();
        let xf = schouten_bracket(&t, &mx, &mf).unwrap();
        prop_assert_eq!(t.to_base(xf.poly()).unwrap(), x.apply(&f).unwrap());
        // derivation of the wedge product
        let y = base_field(&mut r, &t);
        let my = Multivector::from_vector_field(&t, &y).unwrap();
        let wedge = my.wedge(&mf).unwrap();
        let lhs = schouten_bracket(&t, &mx, &wedge).unwrap();
        let dx = mx.poly().degree().unwrap() - n;
        let rhs = schouten_bracket(&t, &mx, &my).unwrap().wedge(&mf).unwrap().poly()
            + &sign(
                my.poly() * schouten_bracket(&t, &mx, &mf).unwrap().poly(),
                odd(dx * my.poly().degree().unwrap()),
            );
        prop_assert_eq!(lhs.poly(), &rhs);
    }

    #[test]
    fn zero_section_is_a_retraction(seed in any::<u64>(), n in 1i64..=3) {
        let t = cotangent(n);
        let mut r = rng(seed);
        let f = any_poly(&mut r, t.base(), n + 1);
        prop_assert_eq!(t.zero_section(&t.pullback(&f).unwrap()).unwrap(), f);
        let (a, b) = (ambient(&mut r, &t), ambient(&mut r, &t));
        prop_assert_eq!(
            t.zero_section(&(&a * &b)).unwrap(),
            &t.zero_section(&a).unwrap() * &t.zero_section(&b).unwrap()
        );
    }

    #[test]
    fn graph_criterion_matches_ideal_closure(seed in any::<u64>(), n in 1i64..=3) {
        let t = cotangent(n);
        let mut r = rng(seed);
        let alpha = if r.gen_bool(0.5) {
            random_one_form(&mut r, t.base(), n, &small())
        } else {
            exterior_derivative(&random_poly(&mut r, t.base(), n, &small()))
        };
        let fast = t.graph_is_lagrangian(&alpha).unwrap();
        prop_assert_eq!(fast, t.graph_ideal_closed(&alpha).unwrap());
    }
}

#[test]
fn darboux_table() {
    for n in 1..=3 {
        let t = cotangent(n);
        let c = t.chart();
        let m = t.base_dim();
        for q in 0..m {
            let i = t.base().degree(q);
            let eps = odd(i * (n - i));
            let (vq, vp) = (GradedPoly::var(c, q), GradedPoly::var(c, t.momentum(q)));
            let one = GradedPoly::one(c);
            assert_eq!(t.bracket(&vq, &vp).unwrap(), -&one, "n={n} q={q}");
            for q2 in 0..m {
                let (wq, wp) = (GradedPoly::var(c, q2), GradedPoly::var(c, t.momentum(q2)));
                assert!(t.bracket(&vq, &wq).unwrap().is_zero());
                assert!(t.bracket(&vp, &wp).unwrap().is_zero());
                if q2 != q {
                    assert!(t.bracket(&vq, &wp).unwrap().is_zero());
                }
            }
            // X_q = −∂/∂p_q and X_p = ε ∂/∂q
            let xq = t.hamiltonian_vf(&vq).unwrap();
            let xp = t.hamiltonian_vf(&vp).unwrap();
            for k in 0..c.dim() {
                let expect_q = if k == t.momentum(q) {
                    -&one
                } else {
                    GradedPoly::zero(c)
                };
                let expect_p = if k == q {
                    sign(one.clone(), eps)
                } else {
                    GradedPoly::zero(c)
                };
                assert_eq!(xq.image(k), &expect_q);
                assert_eq!(xp.image(k), &expect_p);
            }
            let jq = t.j_map(&Derivation::coordinate(t.base(), q)).unwrap();
            assert_eq!(jq, sign(vp, eps));
        }
    }
}

#[test]
fn closed_forms_on_classical_plane() {
    let base = lagdef::graded::make_chart(&[("x", 0), ("y", 0)]).unwrap();
    let t = lagdef::symplectic::shift_cotangent(&base, 0).unwrap();
    let (x, y) = (GradedPoly::var(&base, 0), GradedPoly::var(&base, 1));
    let closed = OneForm::new(&base, vec![y.clone(), x.clone()]).unwrap();
    let open = OneForm::new(&base, vec![y.clone(), -&x]).unwrap();
    assert!(t.graph_is_lagrangian(&closed).unwrap());
    assert!(t.graph_ideal_closed(&closed).unwrap());
    assert!(!t.graph_is_lagrangian(&open).unwrap());
    assert!(!t.graph_ideal_closed(&open).unwrap());
}
