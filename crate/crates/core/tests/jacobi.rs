use legendre_dnu::jacobi::*;
use legendre_dnu::method::{MethodChoice, MethodId};
use legendre_dnu::zdomain::{CutPoint, Side};
use num_complex::Complex64;
use proptest::prelude::*;

const N_MAX: u32 = 6;
const P_MAX: i64 = 6;

#[test]
fn every_valid_sum_matches_rodrigues() {
    for n in 0..=N_MAX {
        for alpha in -P_MAX..=P_MAX {
            for beta in -P_MAX..=P_MAX {
                let p = JacobiParams::new(n, alpha, beta);
                let truth = rodrigues(p);
                for method in POLY_METHODS {
                    if let Ok(j) = jacobi_poly(p, MethodChoice::One(method)) {
                        assert_eq!(j.poly.to_poly(), truth, "{method} at {p}");
                    }
                }
            }
        }
    }
}

#[test]
fn auto_selects_a_sum_for_legendre_parameters() {
    for n in 0..=N_MAX {
        for m in 0..=N_MAX as i64 {
            for (a, b) in [(m, -m), (-m, m), (m, m), (-m, -m)] {
                let p = JacobiParams::new(n, a, b);
                let auto = jacobi_poly(p, MethodChoice::Auto).unwrap();
                assert_eq!(auto.poly.to_poly(), rodrigues(p));
            }
        }
    }
}

#[test]
fn every_valid_derivative_matches_rodrigues_form() {
    for n in 0..=5 {
        for alpha in -5..=5 {
            for beta in -5..=5 {
                let p = JacobiParams::new(n, alpha, beta);
                let truth = jacobi_dbeta_general(p, MethodId::A15).unwrap().poly.to_poly();
                for method in DBETA_METHODS {
                    if let Ok(d) = jacobi_dbeta_general(p, method) {
                        assert_eq!(d.poly.to_poly(), truth, "{method} at {p}");
                    }
                }
            }
        }
    }
}

#[test]
fn expansion_coefficients_reproduce_the_sum_form() {
    for n in 0..=5 {
        for (alpha, beta) in [(0, 0), (1, -1), (-2, 2), (3, 3)] {
            let p = JacobiParams::new(n, alpha, beta);
            let a16 = jacobi_dbeta_general(p, MethodId::A16).unwrap().poly.to_poly();
            let a26 = jacobi_dbeta_general(p, MethodId::A26).unwrap();
            let coeffs = a26.expansion.expect("expansion coefficients");
            let rebuilt = coeffs
                .iter()
                .enumerate()
                .fold(legendre_dnu::poly::Poly::new(vec![]), |acc, (k, c)| {
                    acc.add(&rodrigues(JacobiParams::new(k as u32, alpha, beta)).scale(c))
                });
            assert_eq!(rebuilt, a16, "{p}");
        }
    }
}

#[test]
fn special_formulas_agree_exactly() {
    for case in SpecialCase::ALL {
        for n in 0..=8 {
            for m in 0..=8 {
                let Ok(params) = case.params(n, m) else { continue };
                let general = jacobi_dbeta_general(params, MethodId::A15).unwrap().poly.to_poly();
                for method in case.valid_methods(n, m) {
                    let v = jacobi_dbeta_special(case, n, m, method).unwrap();
                    assert_eq!(v.to_poly(), general, "{method} {case:?} n={n} m={m}");
                }
            }
        }
    }
}

#[test]
fn special_constraints_are_enforced() {
    assert!(jacobi_dbeta_special(SpecialCase::PlusMinus, 1, 2, MethodId::A31).is_err());
    assert!(jacobi_dbeta_special(SpecialCase::PlusMinus, 2, 1, MethodId::A32).is_err());
    assert!(jacobi_dbeta_special(SpecialCase::MinusMinusLow, 2, 2, MethodId::A53).is_err());
}

#[test]
fn legendre_links_hold() {
    let zs = [(2.0, 0.0), (-0.4, 0.9), (0.3, -1.2), (1.5, 0.0), (-3.0, 0.5)];
    for kind in LinkKind::ALL {
        for n in 0..=6 {
            for m in 0..=7 {
                if !kind.admits(n, m) {
                    assert!(legendre_jacobi_link(kind, n, m, &CutPoint::new(2.0, 0.0).unwrap(), Side::Above).is_err());
                    continue;
                }
                for (re, im) in zs {
                    let z = CutPoint::new(re, im).unwrap();
                    let c = legendre_jacobi_link(kind, n, m, &z, Side::Above).unwrap();
                    assert!(c.holds(1e-11), "{kind:?} n={n} m={m} z={z}: {c:?}");
                }
            }
        }
    }
}

#[test]
fn legendre_parameters_degenerate_only_when_vanishing() {
    for n in 0..=10u32 {
        for m in 0..=10u32 {
            for case in SpecialCase::ALL {
                if let Ok(p) = case.params(n, m) {
                    // P_{n+m}^{(-m,-m)} is identically zero once m > n
                    let expected = case == SpecialCase::MinusMinusHigh && m > n;
                    assert_eq!(p.degree_degenerate(), expected, "{case:?} n={n} m={m}");
                    if expected {
                        assert!(rodrigues(p).is_zero());
                    }
                }
            }
        }
    }
}

fn richardson(f: impl Fn(f64) -> Complex64, h: f64) -> Complex64 {
    let d = |h: f64| (f(h) - f(-h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn parity_holds_exactly(n in 0u32..7, alpha in -6i64..7, beta in -6i64..7, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let c = jacobi_parity(JacobiParams::new(n, alpha, beta), Complex64::new(re, im));
        prop_assert!(c.holds(1e-12));
    }

    #[test]
    fn derivative_matches_finite_difference(
        n in 0u32..=6,
        alpha in -0.9f64..3.0,
        beta in -0.9f64..3.0,
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
    ) {
        // Γ and ψ arguments near their poles lose digits in double precision
        let frac_ok = |x: f64| (x - x.round()).abs() >= 0.1;
        prop_assume!(frac_ok(alpha) && frac_ok(beta) && frac_ok(alpha + beta));
        let z = Complex64::new(re, im);
        let fd = richardson(|h| jacobi_f64(n, alpha, beta + h, z), 1e-3);
        for method in DBETA_METHODS {
            if let Ok(v) = jacobi_dbeta_f64(n, alpha, beta, z, method) {
                let scale = fd.norm().max(jacobi_f64(n, alpha, beta, z).norm()).max(1e-300);
                prop_assert!((v - fd).norm() <= 1e-9 * scale, "{} n={} v={} fd={}", method, n, v, fd);
            }
        }
    }
}
