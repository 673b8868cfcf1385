use legendre_dnu::canonical::{d_z2m1_power, CanonicalForm};
use legendre_dnu::dnu_p::*;
use legendre_dnu::legendre_p::OrderSpec;
use legendre_dnu::method::{MethodChoice, MethodId};
use legendre_dnu::zdomain::{CutPoint, OnCutPoint, Side};
use num_complex::Complex64;
use proptest::prelude::*;

const MAX: u32 = 8;

fn orders() -> impl Iterator<Item = OrderSpec> {
    (0..=MAX).flat_map(|n| {
        (0..=MAX).flat_map(move |m| [OrderSpec::plus(n, m), OrderSpec::minus(n, m)])
    })
}

#[test]
fn all_representations_agree_exactly() {
    for o in orders() {
        let regime = DnuRegime::of(o);
        let reference = dp_default(o);
        assert!(reference.is_gamma_free(), "{o}: {reference}");
        assert!(!reference.has_i_pi(), "{o}");
        for &method in regime.methods().iter().chain(regime.jacobi_routes()) {
            let form = dp_form(o, method).unwrap();
            assert_eq!(form, reference, "{method} at {o}");
        }
    }
}

#[test]
fn methods_outside_their_regime_are_rejected() {
    assert!(dp_form(OrderSpec::plus(1, 3), MethodId::S57).is_err());
    assert!(dp_form(OrderSpec::plus(3, 1), MethodId::C516).is_err());
    assert!(dp_form(OrderSpec::minus(1, 3), MethodId::VIA524).is_err());
    assert!(dp_form(OrderSpec::minus(3, 1), MethodId::J533).is_err());
    assert!(dp_form_via_jacobi(OrderSpec::plus(1, 3), MethodId::J55).is_err());
}

#[test]
fn zero_order_matches_every_remainder_form() {
    for n in 0..=10 {
        let reference = dp_default(OrderSpec::plus(n, 0));
        assert_eq!(legendre_dnu_m0_rodrigues(n), reference, "n={n}");
        for form in RemainderForm::ALL {
            assert_eq!(legendre_dnu_m0(n, form), reference, "{form:?} n={n}");
            assert!(remainder(n, form).is_gamma_free());
        }
    }
}

#[test]
fn upper_supercritical_rodrigues_power_is_annihilated() {
    for n in 0..=MAX {
        for m in n + 1..=MAX + 1 {
            assert!(d_z2m1_power(n as i64, n + m).is_zero(), "n={n} m={m}");
        }
    }
}

#[test]
fn small_closed_forms() {
    let z = Complex64::new(0.7, 1.3);
    let pt = CutPoint::new(z.re, z.im).unwrap();
    let lp = ((z + 1.0) / 2.0).ln();
    let cases: [(OrderSpec, Complex64); 4] = [
        (OrderSpec::plus(0, 0), lp),
        (OrderSpec::plus(0, 1), ((z - 1.0) / (z + 1.0)).sqrt()),
        (
            OrderSpec::minus(0, 1),
            ((z + 1.0) / (z - 1.0)).sqrt() * lp - ((z - 1.0) / (z + 1.0)).sqrt(),
        ),
        (OrderSpec::plus(1, 0), z * lp + z - 1.0),
    ];
    for (o, expected) in cases {
        let v = dp_dnu(o, &pt, MethodChoice::Auto, Side::Above).unwrap();
        assert!((v.numeric - expected).norm() < 1e-13, "{o}: {} vs {expected}", v.numeric);
    }
    let d2 = d2p_dnu2(0, 1, &pt, Side::Above).unwrap();
    let expected = 2.0 * ((z + 1.0) / (z - 1.0)).sqrt() * lp;
    assert!((d2.numeric - expected).norm() < 1e-13);
}

#[test]
fn second_derivative_is_method_independent() {
    for n in 0..=5 {
        for m in n + 1..=6 {
            let reference = d2p_form(n, m, MethodId::R532).unwrap();
            assert!(reference.is_gamma_free());
            for &method in DnuRegime::DownSuper.methods() {
                assert_eq!(d2p_form(n, m, method).unwrap(), reference, "{method} n={n} m={m}");
            }
        }
    }
    assert!(d2p_form(2, 2, MethodId::R532).is_err());
}

#[test]
fn on_cut_degree_one_is_real() {
    // [∂P_ν/∂ν]_{ν=1}(x) = x ln((1+x)/2) + x - 1 on (-1, 1)
    for x in [-0.8, -0.3, 0.0, 0.45, 0.9] {
        let v = dp_dnu_on_cut(OrderSpec::plus(1, 0), &OnCutPoint::principal(x).unwrap(), MethodChoice::Auto).unwrap();
        let expected = x * ((1.0 + x) / 2.0).ln() + x - 1.0;
        assert!((v.re - expected).abs() < 1e-14 && v.im.abs() < 1e-14, "x={x}: {v}");
    }
}

#[test]
fn jacobi_routes_evaluate_like_direct_forms() {
    let pt = CutPoint::new(-1.6, 0.4).unwrap();
    for (o, route) in [
        (OrderSpec::plus(4, 2), MethodId::J55),
        (OrderSpec::plus(5, 3), MethodId::J56),
        (OrderSpec::minus(2, 5), MethodId::J533),
    ] {
        let a = dp_dnu_via_jacobi(o, &pt, route, Side::Above).unwrap().numeric;
        let b = dp_dnu(o, &pt, MethodChoice::Auto, Side::Above).unwrap().numeric;
        assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0), "{o} {route}");
    }
}

fn form_of(o: OrderSpec) -> CanonicalForm {
    dp_default(o)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugate_symmetry(n in 0u32..6, m in 0u32..6, plus in any::<bool>(), re in -3.0f64..3.0, im in 0.05f64..3.0) {
        let o = if plus { OrderSpec::plus(n, m) } else { OrderSpec::minus(n, m) };
        let form = form_of(o);
        let z = CutPoint::new(re, im).unwrap();
        let up = dp_dnu(o, &z, MethodChoice::One(DnuRegime::of(o).methods()[0]), Side::Above).unwrap().numeric;
        let down = dp_dnu(o, &z.conj(), MethodChoice::One(DnuRegime::of(o).methods()[0]), Side::Above).unwrap().numeric;
        prop_assert!((up.conj() - down).norm() <= 1e-10 * up.norm().max(1.0), "{} {}", o, form);
    }
}
