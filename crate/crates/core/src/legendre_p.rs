//! Associated Legendre functions of the first kind `P_n^{±m}(z)` for integer
//! degree and order, in all of their Rodrigues-type representations.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::cache::Memo;
use crate::canonical::{d_z2m1_power, d_z2m1_power_log, leibniz, CanonicalForm, LogFactor};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, rat_big, Rational};
use crate::method::MethodId;
use crate::zdomain::{on_cut_value, rel_dev, CutPoint, CutSide, EvalPoint, OnCutKind, OnCutPoint, Side};

/// Sign of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(format!("unknown sign `{other}`")),
        }
    }
}

/// Whether the order exceeds the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `0 <= m <= n`.
    Regular,
    /// `m > n`.
    Supercritical,
}

/// Degree `n`, order magnitude `m` and order sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderSpec {
    pub n: u32,
    pub m: u32,
    pub sign: Sign,
}

impl OrderSpec {
    pub fn new(n: u32, m: u32, sign: Sign) -> Self {
        Self { n, m, sign }
    }

    pub fn plus(n: u32, m: u32) -> Self {
        Self::new(n, m, Sign::Plus)
    }

    pub fn minus(n: u32, m: u32) -> Self {
        Self::new(n, m, Sign::Minus)
    }

    pub fn regime(&self) -> Regime {
        if self.m <= self.n {
            Regime::Regular
        } else {
            Regime::Supercritical
        }
    }

    /// Signed order as an integer.
    pub fn order(&self) -> i64 {
        self.sign.as_i32() as i64 * self.m as i64
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={}{}", self.n, self.sign, self.m)
    }
}

/// A computed value with its exact form when one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct PValue {
    pub numeric: Complex64,
    pub exact: Option<CanonicalForm>,
}

/// Outcome of an identity check at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// Exact agreement when both sides are available symbolically.
    pub exact_equal: Option<bool>,
    pub rel_deviation: f64,
}

impl IdentityCheck {
    pub fn new(lhs: Complex64, rhs: Complex64, exact_equal: Option<bool>) -> Self {
        Self {
            lhs,
            rhs,
            exact_equal,
            rel_deviation: rel_dev(lhs, rhs),
        }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.exact_equal.unwrap_or(true) && self.rel_deviation <= tol
    }
}

pub(crate) fn two_pow(k: u32) -> Rational {
    rat_big(num_bigint::BigInt::one() << k)
}

pub(crate) fn fact(k: i64) -> Rational {
    assert!(k >= 0, "factorial of negative argument {k}");
    rat_big(factorial(k as u32))
}

pub(crate) fn sign_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Methods applicable to the given order, in a stable order.
pub fn p_methods(o: OrderSpec) -> Vec<MethodId> {
    use MethodId::*;
    match (o.regime(), o.sign) {
        (Regime::Regular, _) => vec![R320, R322, R325, R326],
        (Regime::Supercritical, Sign::Plus) => vec![R320],
        (Regime::Supercritical, Sign::Minus) => vec![R327, R330, R522],
    }
}

static P_CACHE: Lazy<Memo<(OrderSpec, MethodId), CanonicalForm>> = Lazy::new(Memo::new);

/// Exact form of `P_n^{±m}(z)` by the chosen representation.
pub fn p_form(o: OrderSpec, method: MethodId) -> Result<CanonicalForm> {
    if !p_methods(o).contains(&method) {
        return Err(Error::invalid(
            method,
            format!("not a representation of P for {o}; valid: {:?}", p_methods(o)),
        ));
    }
    P_CACHE.get_or_try(&(o, method), || build_p(o, method))
}

/// Exact form with the default representation.
pub fn p_default(o: OrderSpec) -> CanonicalForm {
    p_form(o, p_methods(o)[0]).expect("default method is always valid")
}

fn build_p(o: OrderSpec, method: MethodId) -> Result<CanonicalForm> {
    let (n, m) = (o.n as i64, o.m as i64);
    let s = o.sign.as_i32() as i64;
    let norm = Rational::one() / (two_pow(o.n) * fact(n));
    let form = match method {
        MethodId::R320 => {
            let k = n + s * m;
            if k < 0 {
                return Err(Error::invalid(method, "lower sign needs m <= n"));
            }
            d_z2m1_power(n, k as u32)
                .mul_z2m1_half_power(s * m)
                .scale_rat(&norm)
        }
        MethodId::R322 => d_z2m1_power(n, (n - s * m) as u32)
            .mul_z2m1_half_power(-s * m)
            .scale_rat(&(norm * fact(n + s * m) / fact(n - s * m))),
        MethodId::R325 => leibniz(n - s * m, n + s * m, LogFactor::One, o.n)
            .mul_ratio_half_power(-s * m)
            .scale_rat(&(Rational::one() / (two_pow(o.n) * fact(n - s * m)))),
        MethodId::R326 => leibniz(n + s * m, n - s * m, LogFactor::One, o.n)
            .mul_ratio_half_power(s * m)
            .scale_rat(&(Rational::one() / (two_pow(o.n) * fact(n - s * m)))),
        MethodId::R327 => leibniz(n + m, n - m, LogFactor::One, o.n)
            .mul_ratio_half_power(m)
            .scale_rat(&(Rational::one() / (two_pow(o.n) * fact(n + m)))),
        MethodId::R330 => {
            let first = leibniz(n - m, n + m, LogFactor::One, o.n)
                .mul_ratio_half_power(-m)
                .scale_rat(&(Rational::one() / (two_pow(o.n) * fact(n + m))));
            &first + &supercritical_defect(o.n, o.m)
        }
        MethodId::R522 => {
            // ln(z+1) = ln((z+1)/2) + ln 2; the constant is annihilated because n+m > 2n
            debug_assert!(d_z2m1_power(n, (n + m) as u32).is_zero());
            let c = sign_pow(n + m + 1) / (two_pow(o.n) * fact(n) * fact(n + m) * fact(m - n - 1));
            d_z2m1_power_log(n, (n + m) as u32)
                .mul_z2m1_half_power(m)
                .scale_rat(&c)
        }
        other => return Err(Error::invalid(other, "not a first-kind representation")),
    };
    Ok(form)
}

/// `(-1)^m 2^{n+1} n! / ((n+m)! (m-n-1)!) (z^2-1)^{m/2} d^{m-n-1}(z^2-1)^{-n-1}`,
/// the term separating `P_n^{-m}(z)` from `(-1)^n P_n^{-m}(-z)` when `m > n`.
pub fn supercritical_defect(n: u32, m: u32) -> CanonicalForm {
    let (n, m) = (n as i64, m as i64);
    let c = sign_pow(m) * two_pow((n + 1) as u32) * fact(n) / (fact(n + m) * fact(m - n - 1));
    d_z2m1_power(-n - 1, (m - n - 1) as u32)
        .mul_z2m1_half_power(m)
        .scale_rat(&c)
}

/// Evaluates `P_n^{±m}(z)`.
pub fn p_eval(o: OrderSpec, z: &CutPoint, method: MethodId, real_side: Side) -> Result<PValue> {
    let form = p_form(o, method)?;
    let numeric = form.eval(&EvalPoint::from_cut(z, real_side));
    Ok(PValue {
        numeric,
        exact: Some(form),
    })
}

/// `P_n^{-m} = ((n-m)!/(n+m)!) P_n^m`, checked exactly and at `z`.
pub fn p_ratio_check(n: u32, m: u32, z: &CutPoint) -> Result<IdentityCheck> {
    if m > n {
        return Err(Error::ConstraintViolation(format!("ratio identity needs m <= n, got m={m} n={n}")));
    }
    let lhs = p_default(OrderSpec::minus(n, m));
    let c = fact((n - m) as i64) / fact((n + m) as i64);
    let rhs = p_default(OrderSpec::plus(n, m)).scale_rat(&c);
    let p = EvalPoint::from_cut(z, Side::Above);
    Ok(IdentityCheck::new(lhs.eval(&p), rhs.eval(&p), Some(lhs == rhs)))
}

/// Parity: `P(-z) = (-1)^n P(z)` when `m <= n`; for `m > n` with the lower
/// sign, `P_n^{-m}(z) = (-1)^n P_n^{-m}(-z) + defect`.
pub fn p_parity_check(o: OrderSpec, z: &CutPoint, real_side: Side) -> Result<IdentityCheck> {
    let p = EvalPoint::from_cut(z, real_side);
    let f = p_default(o);
    let reflected = f.reflect(p.side);
    let parity = sign_pow(o.n as i64);
    match (o.regime(), o.sign) {
        (Regime::Regular, _) | (Regime::Supercritical, Sign::Plus) => {
            let rhs = f.scale_rat(&parity);
            Ok(IdentityCheck::new(
                f.eval(&p.reflect()),
                rhs.eval(&p),
                Some(reflected == rhs),
            ))
        }
        (Regime::Supercritical, Sign::Minus) => {
            let rhs = &reflected.scale_rat(&parity) + &supercritical_defect(o.n, o.m);
            Ok(IdentityCheck::new(f.eval(&p), rhs.eval(&p), Some(f == rhs)))
        }
    }
}

/// On-cut value: the phase-averaged combination for `CutSide::Principal`,
/// otherwise the raw boundary value `P(x ± i0)`.
pub fn p_on_cut(o: OrderSpec, x: &OnCutPoint, method: MethodId) -> Result<PValue> {
    let form = p_form(o, method)?;
    let numeric = on_cut_combine(&form, o, x, OnCutKind::First)?;
    Ok(PValue {
        numeric,
        exact: None,
    })
}

/// Applies the first- or second-kind on-cut rule to an exact form.
pub(crate) fn on_cut_combine(
    form: &CanonicalForm,
    o: OrderSpec,
    x: &OnCutPoint,
    kind: OnCutKind,
) -> Result<Complex64> {
    x.require_interior()?;
    let above = form.eval(&EvalPoint::boundary(x.x(), Side::Above)?);
    let below = form.eval(&EvalPoint::boundary(x.x(), Side::Below)?);
    let sign = o.sign.as_i32();
    Ok(match x.side() {
        CutSide::Principal => on_cut_value(above, below, o.m, sign, kind),
        CutSide::Above => above,
        CutSide::Below => below,
    })
}

/// True when every valid representation yields the same exact form.
pub fn p_methods_agree(o: OrderSpec) -> Result<bool> {
    let forms = p_methods(o)
        .into_iter()
        .map(|m| p_form(o, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(forms.windows(2).all(|w| w[0] == w[1]))
}

/// `P_n^{±m}` evaluated exactly at `-z` (as a form in `z`).
pub fn p_reflected(o: OrderSpec, side: Side) -> CanonicalForm {
    p_default(o).reflect(side)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(re: f64, im: f64) -> CutPoint {
        CutPoint::new(re, im).unwrap()
    }

    fn val(o: OrderSpec, z: &CutPoint) -> Complex64 {
        p_default(o).eval(&EvalPoint::from_cut(z, Side::Above))
    }

    #[test]
    fn degree_zero_is_one() {
        let z = cp(0.3, 0.8);
        assert!((val(OrderSpec::plus(0, 0), &z) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn supercritical_plus_vanishes() {
        assert!(p_default(OrderSpec::plus(1, 2)).is_zero());
    }

    #[test]
    fn closed_forms() {
        let z = cp(2.0, 0.5);
        let zc = z.z();
        let v = val(OrderSpec::minus(0, 1), &z);
        assert!((v - ((zc - 1.0) / (zc + 1.0)).sqrt()).norm() < 1e-14);
        let v = val(OrderSpec::plus(2, 1), &z);
        let expect = zc * 3.0 * (zc - 1.0).sqrt() * (zc + 1.0).sqrt();
        assert!((v - expect).norm() < 1e-13 * expect.norm());
    }

    #[test]
    fn all_methods_agree_small() {
        for n in 0..5 {
            for m in 0..7 {
                for sign in [Sign::Plus, Sign::Minus] {
                    assert!(p_methods_agree(OrderSpec::new(n, m, sign)).unwrap(), "n={n} m={m} {sign}");
                }
            }
        }
    }

    #[test]
    fn ratio_and_parity() {
        let z = cp(2.0, 0.0);
        let c = p_ratio_check(1, 1, &z).unwrap();
        assert!(c.holds(1e-14));
        assert!((c.lhs.re - 3f64.sqrt() / 2.0).abs() < 1e-14);
        let c = p_parity_check(OrderSpec::minus(0, 1), &z, Side::Above).unwrap();
        assert!(c.holds(1e-14));
        let c = p_parity_check(OrderSpec::minus(1, 3), &cp(2.5, 0.0), Side::Above).unwrap();
        assert!(c.holds(1e-12));
        assert!(p_ratio_check(1, 2, &z).is_err());
    }

    #[test]
    fn on_cut_values() {
        let x = OnCutPoint::principal(0.4).unwrap();
        let v = p_on_cut(OrderSpec::plus(1, 0), &x, MethodId::R320).unwrap();
        assert!((v.numeric - 0.4).norm() < 1e-15);
        let v = p_on_cut(OrderSpec::plus(1, 1), &x, MethodId::R320).unwrap();
        // the phase rule yields the Condon-Shortley sign
        assert!((v.numeric + (1.0f64 - 0.16).sqrt()).norm() < 1e-15);
        let v = p_on_cut(OrderSpec::plus(2, 1), &OnCutPoint::principal(0.0).unwrap(), MethodId::R320).unwrap();
        assert!(v.numeric.norm() < 1e-15);
    }
}
