use legendre_dnu::canonical::CanonicalForm;
use legendre_dnu::dnu_p::dp_default;
use legendre_dnu::exactnum::{digamma_int, frac, GammaLinear};
use num_rational::BigRational;
use legendre_dnu::legendre_p::{p_default, OrderSpec, Regime};
use legendre_dnu::legendre_q::*;
use legendre_dnu::method::{MethodChoice, MethodId};
use legendre_dnu::zdomain::{CutPoint, EvalPoint, OnCutPoint, Side};
use num_complex::Complex64;
use num_traits::One;
use proptest::prelude::*;

const MAX: u32 = 8;

fn fact(k: u32) -> BigRational {
    legendre_dnu::exactnum::factorial_rat(k as i64).unwrap()
}

fn all_orders() -> impl Iterator<Item = OrderSpec> {
    (0..=MAX).flat_map(|n| (0..=MAX).flat_map(move |m| [OrderSpec::plus(n, m), OrderSpec::minus(n, m)]))
}

#[test]
fn representations_agree_exactly_and_match_the_defining_limit() {
    for o in all_orders() {
        let methods = q_methods(o);
        if methods.is_empty() {
            continue;
        }
        let reference = q_form(o, methods[0]).unwrap();
        assert!(reference.is_gamma_free(), "{o}");
        assert!(!reference.has_i_pi(), "{o}");
        for &method in methods {
            assert_eq!(q_form(o, method).unwrap(), reference, "{method} at {o}");
        }
        for side in [Side::Above, Side::Below] {
            assert_eq!(q_via_degree_derivative(o, side).unwrap(), reference, "{o} {side:?}");
        }
    }
}

#[test]
fn log_coefficient_is_half_of_p() {
    let z = CutPoint::new(2.0, 0.5).unwrap();
    for o in all_orders().filter(|o| o.regime() == Regime::Regular) {
        let q = q_eval(o, &z, MethodChoice::Auto, Side::Above).unwrap();
        let a = q.log_coefficient().expect("log enters through the ratio");
        assert_eq!(a, p_default(o).scale_rat(&frac(1, 2)), "{o}");
    }
}

#[test]
fn lower_sign_is_the_factorial_ratio() {
    for n in 0..=MAX {
        for m in 0..=n {
            let c = fact(n - m) / fact(n + m);
            for &method in q_methods(OrderSpec::plus(n, m)) {
                let up = q_form(OrderSpec::plus(n, m), method).unwrap();
                let down = q_form(OrderSpec::minus(n, m), method).unwrap();
                assert_eq!(down, up.scale_rat(&c), "{method} n={n} m={m}");
            }
        }
    }
}

#[test]
fn w_branches_and_parity() {
    for n in 0..=MAX {
        for m in 0..=n {
            let reference = w_form_branch(n, m, MethodId::W610, WBranch::Upper).unwrap();
            assert!(!reference.has_logs() && reference.is_gamma_free());
            let parity = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(reference.reflect(Side::Above), reference.scale_int(parity), "n={n} m={m}");
            for method in W_METHODS {
                for branch in [WBranch::Upper, WBranch::Lower] {
                    let w = w_form_branch(n, m, method, branch).unwrap();
                    assert_eq!(w, reference, "{method} {branch:?} n={n} m={m}");
                }
            }
        }
    }
    assert!(w_form_branch(1, 2, MethodId::W610, WBranch::Upper).is_err());
    assert_eq!(
        w_form(OrderSpec::plus(1, 0), MethodId::W614).unwrap(),
        CanonicalForm::constant(GammaLinear::one())
    );
}

#[test]
fn negative_degree_methods_agree_exactly() {
    for n in 0..=6 {
        for m in n + 1..=7 {
            let reference = q_negdeg_form(n, m, MethodId::C623).unwrap();
            for method in NEGDEG_METHODS {
                assert_eq!(q_negdeg_form(n, m, method).unwrap(), reference, "{method} n={n} m={m}");
            }
        }
    }
    assert!(q_negdeg_form(2, 2, MethodId::C623).is_err());
}

#[test]
fn lower_sign_above_critical_order_is_flagged_zero() {
    let z = CutPoint::new(2.0, 0.3).unwrap();
    let v = q_eval(OrderSpec::minus(1, 3), &z, MethodChoice::Auto, Side::Above).unwrap();
    assert!(v.gamma_ratio_zero);
    assert_eq!(v.numeric, Complex64::new(0.0, 0.0));
    let v = q_eval(OrderSpec::plus(1, 3), &z, MethodChoice::Auto, Side::Above).unwrap();
    assert!(!v.gamma_ratio_zero);
}

#[test]
fn on_cut_examples() {
    for x in [-0.7, -0.2, 0.0, 0.35, 0.8] {
        let pt = OnCutPoint::principal(x).unwrap();
        let q0 = q_on_cut(OrderSpec::plus(0, 0), &pt, MethodChoice::Auto).unwrap();
        let l = ((1.0 + x) / (1.0 - x)).ln();
        assert!((q0 - Complex64::new(0.5 * l, 0.0)).norm() < 1e-14, "x={x}");
        let q1 = q_on_cut(OrderSpec::plus(1, 0), &pt, MethodChoice::Auto).unwrap();
        assert!((q1 - Complex64::new(0.5 * x * l - 1.0, 0.0)).norm() < 1e-14, "x={x}");
        // both rims of -1/sqrt(z^2-1) are ±i/sqrt(1-x^2); the phase rule gives a real value
        let q01 = q_on_cut(OrderSpec::plus(0, 1), &pt, MethodChoice::Auto).unwrap();
        assert!((q01 - Complex64::new(-1.0 / (1.0 - x * x).sqrt(), 0.0)).norm() < 1e-14, "x={x}: {q01}");
    }
    let edge = OnCutPoint::principal(1.0);
    assert!(edge.is_err() || q_on_cut(OrderSpec::plus(0, 0), &edge.unwrap(), MethodChoice::Auto).is_err());
}

#[test]
fn bridges_hold_exactly() {
    for n in 0..=5 {
        for m in n + 1..=6 {
            for (re, im) in [(2.0, 1.0), (-0.5, 0.7), (0.3, -1.1), (3.0, 0.0), (1.2, 0.0)] {
                let z = CutPoint::new(re, im).unwrap();
                for side in [Side::Above, Side::Below] {
                    let c = d2p_bridge_check(n, m, &z, side).unwrap();
                    assert!(c.holds(1e-12), "n={n} m={m} z={z} {side:?}: {c:?}");
                }
            }
        }
    }
    assert!(d2p_bridge_check(1, 1, &CutPoint::new(2.0, 1.0).unwrap(), Side::Above).is_err());
}

#[test]
fn first_bridge_closed_form_example() {
    let z = Complex64::new(0.4, 0.9);
    let pt = CutPoint::new(z.re, z.im).unwrap();
    let half_sum = 0.5 * ((z - 1.0) / (z + 1.0)).sqrt() - 0.5 * ((z + 1.0) / (z - 1.0)).sqrt();
    let q = q_eval(OrderSpec::plus(0, 1), &pt, MethodChoice::Auto, Side::Above).unwrap().numeric;
    assert!((q - half_sum).norm() < 1e-14);
    assert!((q + 1.0 / (z * z - 1.0).sqrt()).norm() < 1e-14);
}

#[test]
fn degree_derivative_forms_are_gamma_free_and_combine() {
    for n in 0..=4u32 {
        for m in n + 1..=5 {
            let psi = &digamma_int((n + m + 1) as i64).unwrap() - &digamma_int((m - n) as i64).unwrap();
            let q_plus = q_form(OrderSpec::plus(n, m), MethodId::C620).unwrap();
            let q_neg = q_negdeg_form(n, m, MethodId::C623).unwrap();
            let lower = OrderSpec::minus(n, m);
            let dp = dp_default(lower);
            let sign = if (n + m) % 2 == 0 { 1 } else { -1 };
            let c = fact(n + m) * fact(m - n - 1) * BigRational::from_integer(sign.into());
            for side in [Side::Above, Side::Below] {
                let plus = dq_form(n, m, DegreePoint::PlusN, side).unwrap();
                let minus = dq_form(n, m, DegreePoint::MinusNMinus1, side).unwrap();
                assert!(plus.is_gamma_free() && minus.is_gamma_free(), "n={n} m={m}");
                // the sum keeps only ∂P_n^{-m}(z); the difference only the iπ and reflected terms
                let sum = (&q_plus - &q_neg).scale(&psi) - dp.scale_rat(&c);
                assert_eq!(&plus + &minus, sum, "sum n={n} m={m} {side:?}");
                let s = if side == Side::Above { 1 } else { -1 };
                let parity = if n % 2 == 0 { 1 } else { -1 };
                let diff = (&q_plus + &q_neg).scale(&psi)
                    + (p_default(lower).mul(&CanonicalForm::i_pi()).scale_int(s)
                        + dp.reflect(side).scale_int(parity))
                    .scale_rat(&c);
                assert_eq!(&plus - &minus, diff, "difference n={n} m={m} {side:?}");
            }
        }
    }
}

#[test]
fn degree_derivative_conjugate_symmetry() {
    for (n, m) in [(0, 1), (0, 2), (1, 2), (1, 3)] {
        for (re, im) in [(1.5, 0.4), (-0.3, 1.2), (0.2, 0.05)] {
            let z = CutPoint::new(re, im).unwrap();
            for at in [DegreePoint::PlusN, DegreePoint::MinusNMinus1] {
                let up = dq_dnu(n, m, &z, at, Side::Above).unwrap().numeric;
                let down = dq_dnu(n, m, &z.conj(), at, Side::Above).unwrap().numeric;
                assert!((up.conj() - down).norm() <= 1e-12 * up.norm().max(1.0), "{n} {m} {at}");
            }
        }
    }
}

#[test]
fn real_axis_side_flag_selects_the_branch() {
    let z = CutPoint::new(2.0, 0.0).unwrap();
    let above = dq_dnu(0, 1, &z, DegreePoint::PlusN, Side::Above).unwrap().numeric;
    let below = dq_dnu(0, 1, &z, DegreePoint::PlusN, Side::Below).unwrap().numeric;
    let near = dq_dnu(0, 1, &CutPoint::new(2.0, 1e-9).unwrap(), DegreePoint::PlusN, Side::Above).unwrap().numeric;
    assert!((above - near).norm() < 1e-7);
    assert!((above.conj() - below).norm() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn w_parity_numeric(n in 0u32..7, m in 0u32..7, re in -3.0f64..3.0, im in 0.05f64..3.0) {
        prop_assume!(m <= n);
        let w = w_form(OrderSpec::plus(n, m), MethodId::W612).unwrap();
        let p = EvalPoint::from_cut(&CutPoint::new(re, im).unwrap(), Side::Above);
        let lhs = w.eval(&p.reflect());
        let rhs = w.eval(&p) * if n % 2 == 1 { 1.0 } else { -1.0 };
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
    }
}
