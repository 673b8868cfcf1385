use legendre_dnu::dnu_p::{d2p_dnu2, dp_dnu, dp_dnu_on_cut};
use legendre_dnu::legendre_p::{p_eval, p_methods, OrderSpec};
use legendre_dnu::method::MethodChoice;
use legendre_dnu::oracles::*;
use legendre_dnu::zdomain::{CutPoint, OnCutPoint, Side};
use num_complex::Complex64;
use proptest::prelude::*;

fn pt(re: f64, im: f64) -> CutPoint {
    CutPoint::new(re, im).unwrap()
}

fn dp(o: OrderSpec, z: &CutPoint) -> Complex64 {
    dp_dnu(o, z, MethodChoice::Auto, Side::Above).unwrap().numeric
}

fn signed(n: u32, m: i64) -> OrderSpec {
    if m >= 0 {
        OrderSpec::plus(n, m as u32)
    } else {
        OrderSpec::minus(n, (-m) as u32)
    }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn series_reproduces_first_kind_values() {
    let cfg = SeriesConfig::default();
    assert!((p_series(1.0, 0, &pt(1.5, 0.0), &cfg).unwrap().value - 1.5).norm() < 1e-15);
    for (o, z) in [
        (OrderSpec::plus(2, 1), pt(1.2, 0.0)),
        (OrderSpec::minus(3, 2), pt(0.4, 0.7)),
        (OrderSpec::plus(4, 4), pt(1.9, -0.6)),
        (OrderSpec::minus(1, 3), pt(0.1, 0.2)),
    ] {
        let exact = p_eval(o, &z, p_methods(o)[0], Side::Above).unwrap().numeric;
        let mu = o.m as i64 * o.sign.as_i32() as i64;
        let series = p_series(o.n as f64, mu, &z, &cfg).unwrap().value;
        assert!(close(series, exact, 1e-13), "{o}: {series} vs {exact}");
    }
}

#[test]
fn series_refuses_points_outside_the_disc() {
    let cfg = SeriesConfig::default();
    assert!(p_series(1.0, 0, &pt(2.95, 0.0), &cfg).is_err());
    assert!(dnu_series(1.0, 0, &pt(1.0, 1.95), &cfg).is_err());
}

#[test]
fn term_differentiated_series_matches_exact_derivatives() {
    let cfg = SeriesConfig::default();
    let z = pt(1.5, 0.0);
    assert!((dnu_series(0.0, 0, &z, &cfg).unwrap().value - dp(OrderSpec::plus(0, 0), &z)).norm() < 1e-10);
    for n in 0..=5u32 {
        for m in -6i64..=6 {
            for z in [pt(1.4, 0.0), pt(0.6, 0.5), pt(1.2, -0.9)] {
                let o = signed(n, m);
                let series = dnu_series(n as f64, m, &z, &cfg).unwrap().value;
                assert!(close(series, dp(o, &z), 1e-11), "{o} at {z}");
            }
        }
    }
}

#[test]
fn degree_zero_closed_form_matches_series() {
    let cfg = SeriesConfig::default();
    let z = pt(1.3, 0.0);
    for mu in -4..=1 {
        let a = dnu_at_degree_zero(mu, &z, &cfg).unwrap().value;
        let b = dnu_series(0.0, mu, &z, &cfg).unwrap().value;
        assert!(close(a, b, 1e-10), "mu={mu}");
    }
}

#[test]
fn integer_degree_closed_form_matches_series() {
    let cfg = SeriesConfig::default();
    let z = pt(1.4, 0.0);
    for n in 0..=5u32 {
        for mu in -5..=5 {
            let a = dnu_series_closed(n, mu, &z, &cfg).unwrap().value;
            let b = dnu_series(n as f64, mu, &z, &cfg).unwrap().value;
            assert!(close(a, b, 1e-8), "n={n} mu={mu}: {a} vs {b}");
        }
    }
}

#[test]
fn reflected_series_agrees_off_the_integers() {
    let cfg = SeriesConfig::default();
    for (nu, mu, z) in [(0.3, 0, pt(1.5, 0.0)), (1.7, 2, pt(0.8, 0.4)), (2.25, -1, pt(1.1, -0.6))] {
        let a = dnu_series_reflected(nu, mu, &z, &cfg).unwrap().value;
        let b = dnu_series(nu, mu, &z, &cfg).unwrap().value;
        assert!(close(a, b, 1e-10), "nu={nu} mu={mu}: {a} vs {b}");
    }
    assert!(dnu_series_reflected(2.0, 0, &pt(1.5, 0.0), &cfg).is_err());
}

#[test]
fn on_cut_closed_forms() {
    for x in [-0.7, -0.2, 0.3, 0.85] {
        let base = on_cut_closed(OnCutClosedForm::LowerOrder, 0, 0, x).unwrap();
        assert!((base - ((1.0 + x) / 2.0).ln()).abs() < 1e-14);
        let degree_zero = on_cut_closed(OnCutClosedForm::DegreeZero, 0, 1, x).unwrap();
        let main = dp_dnu_on_cut(OrderSpec::minus(0, 1), &OnCutPoint::principal(x).unwrap(), MethodChoice::Auto).unwrap();
        assert!((degree_zero - main.re).abs() < 1e-12);
        let upper = on_cut_closed(OnCutClosedForm::UpperOrder, 3, 0, x).unwrap();
        let lower = on_cut_closed(OnCutClosedForm::LowerOrder, 3, 0, x).unwrap();
        assert_eq!(upper, lower);
    }
    for form in OnCutClosedForm::ALL {
        for n in 0..=5u32 {
            for m in 0..=5u32 {
                if !form.admits(n, m) {
                    assert!(on_cut_closed(form, n, m, 0.2).is_err());
                    continue;
                }
                for x in [-0.6, 0.1, 0.75] {
                    let closed = on_cut_closed(form, n, m, x).unwrap();
                    let main = dp_dnu_on_cut(form.order(n, m), &OnCutPoint::principal(x).unwrap(), MethodChoice::Auto).unwrap();
                    assert!(
                        (closed - main.re).abs() <= 1e-11 * closed.abs().max(1.0) && main.im.abs() < 1e-12,
                        "{form:?} n={n} m={m} x={x}: {closed} vs {main}"
                    );
                }
            }
        }
    }
}

#[test]
fn degree_recursion_holds() {
    assert!(degree_recursion_residual(1, 0, 0.5).unwrap() < 1e-10);
    assert!(degree_recursion_residual(2, 1, -0.3).unwrap() < 1e-10);
    assert!(degree_recursion_residual(1, 1, 0.9).unwrap() < 1e-9);
    for n in 1..=6 {
        for m in 0..=6 {
            for x in [-0.8, -0.1, 0.4] {
                let r = degree_recursion_residual(n, m, x).unwrap();
                assert!(r < 1e-9, "n={n} m={m} x={x}: {r}");
            }
        }
    }
    assert!(degree_recursion_residual(0, 0, 0.5).is_err());
    assert!(degree_recursion_residual(1, 0, 1.0).is_err());
}

#[test]
fn contour_quadrature_matches_exact_derivatives() {
    let z = pt(3.0, 0.0);
    let cfg = ContourConfig { radius: Some(1.0), nodes: 512 };
    let v = contour_dnu(OrderSpec::plus(1, 0), &z, &cfg).unwrap();
    assert!(close(v.value, dp(OrderSpec::plus(1, 0), &z), 1e-10));

    let z = pt(2.0, 2.0);
    let v = contour_dnu(OrderSpec::plus(0, 2), &z, &ContourConfig { radius: None, nodes: 512 }).unwrap();
    assert!(v.vanishing_integral.unwrap().norm() < 1e-13);
    assert!(close(v.value, dp(OrderSpec::plus(0, 2), &z), 1e-10));

    for z in [pt(2.5, 0.5), pt(-0.3, 1.4), pt(-2.0, -1.5), pt(0.5, -0.8)] {
        for n in 0..=4u32 {
            for m in 0..=6u32 {
                for o in [OrderSpec::plus(n, m), OrderSpec::minus(n, m)] {
                    let v = contour_dnu(o, &z, &ContourConfig::default()).unwrap();
                    assert!(close(v.value, dp(o, &z), 1e-9), "{o} at {z}: {} vs {}", v.value, dp(o, &z));
                }
            }
        }
    }
}

#[test]
fn contour_node_doubling_converges() {
    let z = pt(3.0, 0.0);
    let at = |nodes| contour_dnu(OrderSpec::plus(1, 0), &z, &ContourConfig { radius: Some(1.0), nodes }).unwrap().value;
    assert!((at(512) - at(256)).norm() < 1e-12);
    let (a, b, c) = (at(16), at(32), at(64));
    assert!((c - b).norm() < 0.1 * (b - a).norm() || (c - b).norm() < 1e-14);
}

#[test]
fn contour_rejects_bad_geometry() {
    let cfg = ContourConfig { radius: Some(2.1), nodes: 64 };
    assert!(contour_dnu(OrderSpec::plus(1, 0), &pt(3.0, 0.0), &cfg).is_err());
}

#[test]
fn finite_differences() {
    let z = pt(1.5, 0.0);
    let a = fd_dnu(OrderSpec::plus(0, 0), &z, FdOrder::First).unwrap();
    assert!((a.value - (1.25f64).ln()).norm() < 1e-8);
    let b = fd_dnu(OrderSpec::plus(0, 1), &z, FdOrder::First).unwrap();
    assert!((b.value - (0.5f64 / 2.5).sqrt()).norm() < 1e-7);
    let c = fd_dnu(OrderSpec::plus(0, 1), &z, FdOrder::Second).unwrap();
    let exact = d2p_dnu2(0, 1, &z, Side::Above).unwrap().numeric;
    assert!((c.value - exact).norm() < 1e-5, "{} vs {exact}", c.value);
    assert!(fd_dnu(OrderSpec::plus(1, 1), &z, FdOrder::Second).is_err());
    assert!(fd_dnu(OrderSpec::plus(1, 1), &pt(2.6, 0.0), FdOrder::First).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_differences_track_exact_derivatives(
        n in 0u32..=5, m in 0u32..=7, plus in any::<bool>(),
        r in 0.05f64..1.4, theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let o = if plus { OrderSpec::plus(n, m) } else { OrderSpec::minus(n, m) };
        let z = Complex64::new(1.0, 0.0) + Complex64::from_polar(r, theta);
        prop_assume!(z.im.abs() > 1e-3 || z.re > 1.0);
        let z = CutPoint::new(z.re, z.im).unwrap();
        let fd = fd_dnu(o, &z, FdOrder::First).unwrap();
        let exact = dp(o, &z);
        prop_assert!(close(fd.value, exact, 1e-6), "{} at {}: {} vs {}", o, z, fd.value, exact);
    }
}
