//! Degree derivatives `[∂P_ν^{±m}(z)/∂ν]_{ν=n}` for integer `n` and `m`, in
//! every explicit representation, plus `[∂²P_ν^m/∂ν²]_{ν=n}` for `m > n`.
//!
//! All representations are assembled as exact [`CanonicalForm`]s whose
//! coefficients may carry Euler's constant through `ψ`; the constant cancels
//! in every complete representation.

use std::fmt;

use num_complex::Complex64;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::cache::Memo;
use crate::canonical::{d_z2m1_power, d_z2m1_power_log, leibniz, CanonicalForm, LogFactor};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, digamma_int, factorial, frac, rat, rat_big, GammaLinear, Rational};
use crate::jacobi::{jacobi_dbeta_special, SpecialCase};
use crate::legendre_p::{on_cut_combine, p_default, OrderSpec, Regime, Sign};
use crate::method::{MethodChoice, MethodId};
use crate::poly::RatFn;
use crate::zdomain::{CutPoint, EvalPoint, OnCutKind, OnCutPoint, Side};

/// The four sign/order combinations, each with its own formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DnuRegime {
    /// Sign `+`, `m <= n`.
    UpRegular,
    /// Sign `+`, `m > n`.
    UpSuper,
    /// Sign `-`, `m <= n`.
    DownRegular,
    /// Sign `-`, `m > n`.
    DownSuper,
}

impl DnuRegime {
    pub fn of(o: OrderSpec) -> Self {
        match (o.sign, o.regime()) {
            (Sign::Plus, Regime::Regular) => DnuRegime::UpRegular,
            (Sign::Plus, Regime::Supercritical) => DnuRegime::UpSuper,
            (Sign::Minus, Regime::Regular) => DnuRegime::DownRegular,
            (Sign::Minus, Regime::Supercritical) => DnuRegime::DownSuper,
        }
    }

    /// Direct representations (the Jacobi-assembled routes are separate).
    pub fn methods(self) -> &'static [MethodId] {
        use MethodId::*;
        match self {
            DnuRegime::UpRegular => &[R52, R54, S57, S58, S59, S510, S511, L512],
            DnuRegime::UpSuper => &[C516, R517, R518, R520],
            DnuRegime::DownRegular => &[VIA524],
            DnuRegime::DownSuper => &[R532, S534, S535, S536, S537, L538],
        }
    }

    /// Routes through Jacobi parameter derivatives.
    pub fn jacobi_routes(self) -> &'static [MethodId] {
        match self {
            DnuRegime::UpRegular => &[MethodId::J55, MethodId::J56],
            DnuRegime::DownSuper => &[MethodId::J533],
            _ => &[],
        }
    }
}

impl fmt::Display for DnuRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DnuRegime::UpRegular => "up_reg",
            DnuRegime::UpSuper => "up_super",
            DnuRegime::DownRegular => "down_reg",
            DnuRegime::DownSuper => "down_super",
        })
    }
}

/// A degree-derivative method tied to the regime it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DnuMethod {
    pub regime: DnuRegime,
    pub id: MethodId,
}

impl DnuMethod {
    pub fn new(o: OrderSpec, id: MethodId) -> Result<Self> {
        let regime = DnuRegime::of(o);
        if regime.methods().contains(&id) || regime.jacobi_routes().contains(&id) {
            Ok(Self { regime, id })
        } else {
            Err(Error::invalid(
                id,
                format!("not a degree-derivative representation for {o} ({regime})"),
            ))
        }
    }
}

/// A degree-derivative value with its exact form.
#[derive(Debug, Clone, PartialEq)]
pub struct DnuValue {
    pub numeric: Complex64,
    pub exact: Option<CanonicalForm>,
    pub method: MethodId,
}

pub(crate) fn ps(x: i64) -> GammaLinear {
    digamma_int(x).expect("digamma argument positive")
}

pub(crate) fn f(k: i64) -> Rational {
    rat_big(factorial(k as u32))
}

pub(crate) fn sgn(k: i64) -> Rational {
    rat(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

pub(crate) fn two_pow(e: i64) -> Rational {
    let p = rat_big(num_bigint::BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        Rational::one() / p
    }
}

/// `c ((z-1)/2)^i ((z+1)/2)^j`, exponents of either sign.
pub(crate) fn ab(c: GammaLinear, i: i64, j: i64) -> RatFn {
    RatFn::monomial(c.scale(&two_pow(-(i + j))), i, j)
}

pub(crate) fn sum_ab(range: impl Iterator<Item = i64>, term: impl Fn(i64) -> (GammaLinear, i64, i64)) -> CanonicalForm {
    let r = range.fold(RatFn::zero(), |acc, k| {
        let (c, i, j) = term(k);
        acc.add(&ab(c, i, j))
    });
    CanonicalForm::from_ratfn(r)
}

pub(crate) fn gl(r: Rational) -> GammaLinear {
    GammaLinear::from_rational(r)
}

/// Prefactor helpers on forms.
pub(crate) trait Prefactor {
    /// Times `((z+1)/(z-1))^{k/2}`.
    fn ratio(&self, k: i64) -> CanonicalForm;
    /// Times `((z^2-1)/4)^{k/2}`.
    fn quarter(&self, k: i64) -> CanonicalForm;
}

impl Prefactor for CanonicalForm {
    fn ratio(&self, k: i64) -> CanonicalForm {
        self.mul_ratio_half_power(k)
    }

    fn quarter(&self, k: i64) -> CanonicalForm {
        self.mul_z2m1_half_power(k).scale_rat(&two_pow(-k))
    }
}

fn log_half_plus() -> CanonicalForm {
    CanonicalForm::log_half_plus()
}

pub(crate) fn p_plus(n: i64, m: i64) -> CanonicalForm {
    p_default(OrderSpec::plus(n as u32, m as u32))
}

pub(crate) fn p_minus(n: i64, m: i64) -> CanonicalForm {
    p_default(OrderSpec::minus(n as u32, m as u32))
}

/// `P_n^{-m}(-z)` for `m > n`; free of logarithms, so independent of the side.
pub(crate) fn p_minus_reflected(n: i64, m: i64) -> CanonicalForm {
    p_minus(n, m).reflect(Side::Above)
}

static DP_CACHE: Lazy<Memo<(OrderSpec, MethodId), CanonicalForm>> = Lazy::new(Memo::new);

/// Exact form of `[∂P_ν^{±m}/∂ν]_{ν=n}` by the chosen representation.
pub fn dp_form(o: OrderSpec, method: MethodId) -> Result<CanonicalForm> {
    DnuMethod::new(o, method)?;
    DP_CACHE.get_or_try(&(o, method), || build_dp(o, method))
}

/// Exact form with the first listed representation of the regime.
pub fn dp_default(o: OrderSpec) -> CanonicalForm {
    dp_form(o, DnuRegime::of(o).methods()[0]).expect("default method is valid")
}

fn build_dp(o: OrderSpec, method: MethodId) -> Result<CanonicalForm> {
    let (n, m) = (o.n as i64, o.m as i64);
    let l = log_half_plus();
    use MethodId::*;
    let form = match method {
        R52 => {
            let p = p_plus(n, m);
            let norm = Rational::one() / (two_pow(n) * f(n));
            -p.mul(&l)
                + p.scale(&(&ps(n + m + 1) - &ps(n + 1)))
                + d_z2m1_power_log(n, (n + m) as u32)
                    .mul_z2m1_half_power(m)
                    .scale_rat(&norm)
                + d_z2m1_power_log(n, (n - m) as u32)
                    .mul_z2m1_half_power(-m)
                    .scale_rat(&(&norm * f(n + m) / f(n - m)))
        }
        R54 => {
            let p = p_plus(n, m);
            let norm = Rational::one() / (two_pow(n) * f(n - m));
            -p.mul(&l)
                + p.scale(&(&ps(n + 1) - &ps(n - m + 1)))
                + leibniz(n - m, n + m, LogFactor::HalfPlus, o.n).ratio(-m).scale_rat(&norm)
                + leibniz(n + m, n - m, LogFactor::HalfPlus, o.n).ratio(m).scale_rat(&norm)
        }
        S57 => {
            let p = p_plus(n, m);
            p.mul(&l) - p.scale(&(&ps(n + 1) + &ps(n - m + 1)))
                + sum_ab(0..=n - m, |k| {
                    let c = f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                    (ps(k + n + m + 1).scale(&c), k, 0)
                })
                .quarter(m)
                + sum_ab(0..=n, |k| {
                    let c = f(n + m) / f(n - m) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                    (ps(k + n + 1).scale(&c), k, 0)
                })
                .ratio(-m)
        }
        S58 => {
            let p = p_plus(n, m);
            p.mul(&l)
                + p.scale(&(&ps(n + 1) - &ps(n - m + 1)))
                + sum_ab(0..m, |k| {
                    let c = -sgn(n) * f(n + m) / f(n - m) * f(k + n - m) * f(m - k - 1) / (f(k) * f(n + m - k));
                    (gl(c), 0, k)
                })
                .quarter(-m)
                + sum_ab(0..=n - m, |k| {
                    let c = sgn(n + m + k) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                    ((&ps(k + n + m + 1) - &ps(k + m + 1)).scale(&c), 0, k)
                })
                .quarter(m)
                + sum_ab(0..=n, |k| {
                    let c = sgn(n + k) * f(n + m) / f(n - m) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                    ((&ps(k + n + 1) - &ps(k + 1)).scale(&c), 0, k)
                })
                .ratio(m)
        }
        S59 => {
            let p = p_plus(n, m);
            p.mul(&l)
                + p.scale(&(&ps(n + m + 1) - &ps(n + 1)))
                + sum_ab(0..m, |k| {
                    let c = -sgn(n + m) * f(k + n) * f(m - k - 1) / (f(k) * f(n - k));
                    (gl(c), 0, k)
                })
                .ratio(-m)
                + sum_ab(0..=n - m, |k| {
                    let c = sgn(n + m + k) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                    ((&ps(k + n + m + 1) - &ps(k + 1)).scale(&c), 0, k)
                })
                .quarter(m)
                + sum_ab(0..=n, |k| {
                    let c = sgn(n + k) * f(n + m) / f(n - m) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                    ((&ps(k + n + 1) - &ps(k + m + 1)).scale(&c), 0, k)
                })
                .ratio(m)
        }
        S510 => {
            let p = p_plus(n, m);
            let pre = f(n) * f(n + m);
            p.mul(&l)
                + p.scale(&(&ps(n + 1) + &ps(n + m + 1)))
                + sum_ab(1..=m, |k| {
                    let c = -&pre * sgn(k) * f(k - 1) / (f(k + n) * f(k + n - m) * f(m - k));
                    (gl(c), n + k, -k)
                })
                .ratio(m)
                + sum_ab(0..=n - m, |k| {
                    let c = -&pre / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                    ((&ps(n - k + 1) + &ps(n - m - k + 1)).scale(&c), k, n - k)
                })
                .ratio(-m)
        }
        S511 => {
            let p = p_plus(n, m);
            let pre = f(n) * f(n + m);
            p.mul(&l)
                + p.scale(&(&ps(n + 1) + &ps(n + m + 1)))
                + sum_ab(0..m, |k| {
                    let c = -sgn(m + k) * &pre * f(m - k - 1) / (f(k) * f(n - k) * f(n + m - k));
                    (gl(c), n - k, k)
                })
                .ratio(-m)
                + sum_ab(0..=n - m, |k| {
                    let c = -&pre / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                    ((&ps(k + 1) + &ps(k + m + 1)).scale(&c), n - k, k)
                })
                .ratio(m)
        }
        L512 => {
            let p = p_plus(n, m);
            let head = p.mul(&l) + p.scale(&(ps(2 * n + 1).scale(&rat(2)) - ps(n + 1) - ps(n - m + 1)));
            let upper: CanonicalForm = (0..n - m)
                .map(|k| {
                    let c = sgn(n + m + k) * frac(2 * k + 2 * m + 1, (n - m - k) * (k + n + m + 1))
                        * (Rational::one() + f(k) * f(n + m) / (f(k + 2 * m) * f(n - m)));
                    p_plus(k + m, m).scale_rat(&c)
                })
                .sum();
            let lower: CanonicalForm = (0..m)
                .map(|k| {
                    let c = sgn(n + k) * f(n + m) / f(n - m) * frac(2 * k + 1, (n - k) * (k + n + 1));
                    p_minus(k, m).scale_rat(&c)
                })
                .sum();
            head + upper + lower
        }
        C516 => p_minus(n, m).scale_rat(&(sgn(n + m + 1) * f(n + m) * f(m - n - 1))),
        R517 => leibniz(n + m, n - m, LogFactor::One, o.n)
            .ratio(m)
            .scale_rat(&(sgn(n + m + 1) * two_pow(-n) * f(m - n - 1))),
        R518 => {
            leibniz(n - m, n + m, LogFactor::One, o.n)
                .ratio(-m)
                .scale_rat(&(sgn(n + m + 1) * two_pow(-n) * f(m - n - 1)))
                - d_z2m1_power(-n - 1, (m - n - 1) as u32)
                    .mul_z2m1_half_power(m)
                    .scale_rat(&(sgn(n) * two_pow(n + 1) * f(n)))
        }
        R520 => {
            // ln(z+1) and ln((z+1)/2) give the same result: the constant is annihilated
            debug_assert!(d_z2m1_power(n, (n + m) as u32).is_zero());
            d_z2m1_power_log(n, (n + m) as u32)
                .mul_z2m1_half_power(m)
                .scale_rat(&(Rational::one() / (two_pow(n) * f(n))))
        }
        VIA524 => {
            let up = dp_default(OrderSpec::plus(o.n, o.m));
            up.scale_rat(&(f(n - m) / f(n + m))) - p_minus(n, m).scale(&(&ps(n + m + 1) - &ps(n - m + 1)))
        }
        R532 => {
            let p = p_minus(n, m);
            let norm = Rational::one() / (two_pow(n) * f(n + m));
            p_minus_reflected(n, m).mul(&l).scale_rat(&sgn(n + 1))
                - p.scale(&(&ps(n + m + 1) - &ps(n + 1)))
                + leibniz(n + m, n - m, LogFactor::HalfPlus, o.n).ratio(m).scale_rat(&norm)
                + leibniz(n - m, n + m, LogFactor::HalfPlus, o.n).ratio(-m).scale_rat(&norm)
                - d_z2m1_power_log(-n - 1, (m - n - 1) as u32)
                    .mul_z2m1_half_power(m)
                    .scale_rat(&(sgn(m) * two_pow(n + 1) * f(n) / (f(n + m) * f(m - n - 1))))
        }
        S534 => {
            let pr = p_minus_reflected(n, m);
            pr.mul(&l).scale_rat(&sgn(n))
                - pr.scale(&(&ps(n + m + 1) + &ps(n + 1)).scale(&sgn(n)))
                + sum_ab(0..=n, |k| {
                    let c = f(k + n) / (f(k) * f(k + m) * f(n - k));
                    (ps(k + n + 1).scale(&c), k, 0)
                })
                .ratio(-m)
                + sum_ab(0..=n, |k| {
                    let c = sgn(n + k) / (f(n + m) * f(m - n - 1)) * f(k + n) * f(m - k - 1) / (f(k) * f(n - k));
                    (ps(k + n + 1).scale(&c), k, 0)
                })
                .ratio(m)
                + sum_ab(0..=m - n - 1, |k| {
                    let c = sgn(n) * f(m - k - 1) / (f(k) * f(n + m - k) * f(m - n - k - 1));
                    (ps(n + m - k + 1).scale(&c), k, 0)
                })
                .quarter(-m)
        }
        S535 => {
            let p = p_minus(n, m);
            p_minus_reflected(n, m).mul(&l).scale_rat(&sgn(n))
                + p.scale(&(&ps(m - n) - &ps(n + 1)))
                + sum_ab(0..=n, |k| {
                    let c = f(k + n) * f(m - k - 1) / (f(n + m) * f(m - n - 1) * f(k) * f(n - k));
                    ((&ps(k + n + 1) - &ps(m - k)).scale(&c), 0, k)
                })
                .ratio(-m)
                + sum_ab(0..=n, |k| {
                    let c = -sgn(n + k) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                    ((&ps(k + m + 1) - &ps(k + n + 1)).scale(&c), 0, k)
                })
                .ratio(m)
                + sum_ab(0..=m - n - 1, |k| {
                    let c = -sgn(m + k) * f(m - k - 1) / (f(k) * f(n + m - k) * f(m - n - k - 1));
                    ((&ps(n + m - k + 1) - &ps(m - k)).scale(&c), 0, k)
                })
                .quarter(-m)
        }
        S536 => {
            let (p, pr) = (p_minus(n, m), p_minus_reflected(n, m));
            pr.mul(&l).scale_rat(&sgn(n)) - p.scale(&(&ps(n + m + 1) - &ps(m - n)))
                + pr.scale(&(&ps(n + m + 1) + &ps(n + 1)).scale(&sgn(n)))
                + sum_ab(0..=m - n - 1, |k| {
                    let c = -sgn(n) / (f(n) * f(n + m)) * f(k + n) * f(m - k - 1) / (f(k) * f(m - n - k - 1));
                    (ps(k + n + 1).scale(&c), k, -n - 1 - k)
                })
                .ratio(m)
                + sum_ab(0..=n, |k| {
                    let c = -f(n) / f(m - n - 1) * sgn(k) * f(k + m - n - 1) / (f(k) * f(k + m) * f(n - k));
                    (ps(k + m - n).scale(&c), k, n - k)
                })
                .ratio(-m)
                + sum_ab(0..=n, |k| {
                    let c = -sgn(n + k) * f(n) / f(m - n - 1) * f(m - k - 1) / (f(k) * f(n - k) * f(n + m - k));
                    (ps(n + m - k + 1).scale(&c), k, n - k)
                })
                .ratio(m)
        }
        S537 => {
            let (p, pr) = (p_minus(n, m), p_minus_reflected(n, m));
            pr.mul(&l).scale_rat(&sgn(n)) - p.scale(&(&ps(n + m + 1) - &ps(m - n)))
                + pr.scale(&(&ps(n + m + 1) + &ps(n + 1)).scale(&sgn(n)))
                + sum_ab(0..=m - n - 1, |k| {
                    let c = -sgn(n) / (f(n) * f(n + m)) * f(k + n) * f(m - k - 1) / (f(k) * f(m - n - k - 1));
                    (ps(m - k).scale(&c), -n - 1 - k, k)
                })
                .ratio(-m)
                + sum_ab(0..=n, |k| {
                    let c = -sgn(n + k) * f(n) / f(m - n - 1) * f(m - k - 1) / (f(k) * f(n - k) * f(n + m - k));
                    (ps(m - k).scale(&c), n - k, k)
                })
                .ratio(-m)
                + sum_ab(0..=n, |k| {
                    let c = -f(n) / f(m - n - 1) * sgn(k) * f(k + m - n - 1) / (f(k) * f(k + m) * f(n - k));
                    (ps(k + m + 1).scale(&c), n - k, k)
                })
                .ratio(m)
        }
        L538 => {
            let (p, pr) = (p_minus(n, m), p_minus_reflected(n, m));
            let head = pr.mul(&l).scale_rat(&sgn(n)) - p.scale_rat(&frac(1, 2 * n + 1))
                + pr.scale(&(&(&ps(2 * n + 2) + &ps(2 * n + 1)) - &(&ps(n + 1) + &ps(n + m + 1))).scale(&sgn(n)));
            let low: CanonicalForm = (0..n)
                .map(|k| {
                    let c = sgn(n + k) * frac(2 * k + 1, (n - k) * (k + n + 1));
                    let inner = p_minus(k, m)
                        + p_minus_reflected(k, m)
                            .scale_rat(&(sgn(n) * f(k + m) * f(m - k - 1) / (f(n + m) * f(m - n - 1))));
                    inner.scale_rat(&c)
                })
                .sum();
            let high: CanonicalForm = (1..m - n)
                .map(|k| {
                    let c = -sgn(k) * frac(2 * k + 2 * n + 1, k * (k + 2 * n + 1));
                    let inner = p_minus(k + n, m) - p_minus_reflected(k + n, m).scale_rat(&sgn(k + n));
                    inner.scale_rat(&c)
                })
                .sum();
            head + low + high
        }
        J55 | J56 | J533 => return dp_form_via_jacobi(o, method),
        other => return Err(Error::invalid(other, "not a degree-derivative representation")),
    };
    Ok(form)
}

/// First non-Rodrigues special formula valid for `(n, m)`, so the Jacobi
/// routes exercise the closed forms rather than re-deriving the Rodrigues ones.
fn special(case: SpecialCase, n: i64, m: i64) -> CanonicalForm {
    let (n, m) = (n as u32, m as u32);
    let methods = case.valid_methods(n, m);
    let method = methods.get(1).or(methods.first()).copied().expect("case admits (n, m)");
    let cf = jacobi_dbeta_special(case, n, m, method).expect("method validated");
    CanonicalForm::from_poly(cf.to_poly())
}

/// Exact form assembled from Jacobi parameter derivatives.
pub fn dp_form_via_jacobi(o: OrderSpec, route: MethodId) -> Result<CanonicalForm> {
    let regime = DnuRegime::of(o);
    if !regime.jacobi_routes().contains(&route) {
        return Err(Error::invalid(route, format!("no Jacobi route for {o} ({regime})")));
    }
    let (n, m) = (o.n as i64, o.m as i64);
    let l = log_half_plus();
    Ok(match route {
        MethodId::J55 => {
            let p = p_plus(n, m);
            let c = f(n + m) / f(n);
            p.mul(&l)
                + p.scale(&(&ps(n + m + 1) - &ps(n + 1)))
                + special(SpecialCase::MinusMinusHigh, n, m).quarter(-m).scale_rat(&c)
                + special(SpecialCase::PlusPlus, n, m).quarter(m).scale_rat(&c)
        }
        MethodId::J56 => {
            let p = p_plus(n, m);
            let c = f(n) / f(n - m);
            p.mul(&l)
                + p.scale(&(&ps(n + 1) - &ps(n - m + 1)))
                + special(SpecialCase::MinusPlus, n, m).ratio(m).scale_rat(&c)
                + special(SpecialCase::PlusMinus, n, m).ratio(-m).scale_rat(&c)
        }
        MethodId::J533 => {
            let c = f(n) / f(n + m);
            p_minus_reflected(n, m).mul(&l).scale_rat(&sgn(n))
                - p_minus(n, m).scale(&(&ps(n + m + 1) - &ps(n + 1)))
                + special(SpecialCase::PlusMinus, n, m).ratio(-m).scale_rat(&c)
                + special(SpecialCase::MinusPlus, n, m).ratio(m).scale_rat(&c)
                - special(SpecialCase::MinusMinusLow, n, m).quarter(-m).scale_rat(&(sgn(m) * &c))
        }
        _ => unreachable!(),
    })
}

/// Numeric-use preference: expansions about `z = -1` when `z` is nearer to `-1`.
pub fn auto_method(o: OrderSpec, z: Complex64) -> MethodId {
    let near_minus = (z + 1.0).norm() < (z - 1.0).norm();
    match DnuRegime::of(o) {
        DnuRegime::UpRegular if near_minus => MethodId::S58,
        DnuRegime::UpRegular => MethodId::S57,
        DnuRegime::UpSuper => MethodId::C516,
        DnuRegime::DownRegular => MethodId::VIA524,
        DnuRegime::DownSuper if near_minus => MethodId::S535,
        DnuRegime::DownSuper => MethodId::S534,
    }
}

/// `[∂P_ν^{±m}(z)/∂ν]_{ν=n}`.
pub fn dp_dnu(o: OrderSpec, z: &CutPoint, method: MethodChoice, real_side: Side) -> Result<DnuValue> {
    let method = match method {
        MethodChoice::Auto => auto_method(o, z.z()),
        MethodChoice::One(m) => m,
    };
    let form = dp_form(o, method)?;
    Ok(DnuValue {
        numeric: form.eval(&EvalPoint::from_cut(z, real_side)),
        exact: Some(form),
        method,
    })
}

/// Degree derivative through one of the Jacobi routes.
pub fn dp_dnu_via_jacobi(o: OrderSpec, z: &CutPoint, route: MethodId, real_side: Side) -> Result<DnuValue> {
    let form = dp_form_via_jacobi(o, route)?;
    Ok(DnuValue {
        numeric: form.eval(&EvalPoint::from_cut(z, real_side)),
        exact: Some(form),
        method: route,
    })
}

/// On-cut degree derivative with the same phase rule as the function itself.
pub fn dp_dnu_on_cut(o: OrderSpec, x: &OnCutPoint, method: MethodChoice) -> Result<Complex64> {
    let method = match method {
        MethodChoice::Auto => auto_method(o, Complex64::new(x.x(), 0.0)),
        MethodChoice::One(m) => m,
    };
    on_cut_combine(&dp_form(o, method)?, o, x, OnCutKind::First)
}

/// `[∂²P_ν^m/∂ν²]_{ν=n}` for `m > n`, using `method` for the lower-sign derivative.
pub fn d2p_form(n: u32, m: u32, method: MethodId) -> Result<CanonicalForm> {
    if m <= n {
        return Err(Error::ConstraintViolation(format!(
            "second degree derivative needs m > n, got n={n} m={m}"
        )));
    }
    let o = OrderSpec::minus(n, m);
    let (ni, mi) = (n as i64, m as i64);
    let inner = p_default(o).scale(&(&ps(ni + mi + 1) - &ps(mi - ni))) + dp_form(o, method)?;
    Ok(inner.scale_rat(&(sgn(ni + mi + 1) * rat(2) * f(ni + mi) * f(mi - ni - 1))))
}

/// Numeric and exact second degree derivative.
pub fn d2p_dnu2(n: u32, m: u32, z: &CutPoint, real_side: Side) -> Result<DnuValue> {
    let form = d2p_form(n, m, MethodId::R532)?;
    Ok(DnuValue {
        numeric: form.eval(&EvalPoint::from_cut(z, real_side)),
        exact: Some(form),
        method: MethodId::C631,
    })
}

/// Representations of the polynomial `R_n` in
/// `[∂P_ν/∂ν]_{ν=n} = P_n ln((z+1)/2) + R_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RemainderForm {
    /// Expansion over `P_0..P_n`.
    LegendreSum,
    /// Powers of `(z-1)/2`.
    HalfMinus,
    /// Powers of `(z+1)/2`.
    HalfPlus,
    /// `((z+1)/2)^n` times powers of `(z-1)/(z+1)`.
    Ratio,
    /// `((z-1)/2)^n` times powers of `(z+1)/(z-1)`.
    InverseRatio,
}

impl RemainderForm {
    pub const ALL: [RemainderForm; 5] = [
        RemainderForm::LegendreSum,
        RemainderForm::HalfMinus,
        RemainderForm::HalfPlus,
        RemainderForm::Ratio,
        RemainderForm::InverseRatio,
    ];
}

/// `R_n(z)` as an exact rational form.
pub fn remainder(n: u32, form: RemainderForm) -> CanonicalForm {
    let n = n as i64;
    let pn = p_plus(n, 0);
    let two = rat(2);
    let choose2 = |k: i64| rat_big(binomial(n, k).pow(2));
    match form {
        RemainderForm::LegendreSum => {
            let lower: CanonicalForm = (0..n)
                .map(|k| p_plus(k, 0).scale_rat(&(sgn(k + n) * frac(2 * (2 * k + 1), (n - k) * (k + n + 1)))))
                .sum();
            pn.scale(&(&ps(2 * n + 1) - &ps(n + 1)).scale(&two)) + lower
        }
        RemainderForm::HalfMinus => {
            pn.scale(&ps(n + 1).scale(&rat(-2)))
                + sum_ab(0..=n, |k| {
                    let c = &two * f(k + n) / (f(k) * f(k) * f(n - k));
                    (ps(k + n + 1).scale(&c), k, 0)
                })
        }
        RemainderForm::HalfPlus => sum_ab(0..=n, |k| {
            let c = &two * sgn(k + n) * f(k + n) / (f(k) * f(k) * f(n - k));
            ((&ps(k + n + 1) - &ps(k + 1)).scale(&c), 0, k)
        }),
        RemainderForm::Ratio => {
            pn.scale(&ps(n + 1).scale(&two))
                + sum_ab(0..=n, |k| (ps(n - k + 1).scale(&(-&two * choose2(k))), k, n - k))
        }
        RemainderForm::InverseRatio => {
            pn.scale(&ps(n + 1).scale(&two))
                + sum_ab(0..=n, |k| (ps(k + 1).scale(&(-&two * choose2(k))), n - k, k))
        }
    }
}

/// `-P_n ln((z+1)/2) + (1/(2^{n-1} n!)) d^n[(z^2-1)^n ln((z+1)/2)]`.
pub fn legendre_dnu_m0_rodrigues(n: u32) -> CanonicalForm {
    let ni = n as i64;
    -p_plus(ni, 0).mul(&log_half_plus())
        + d_z2m1_power_log(ni, n).scale_rat(&(Rational::one() / (two_pow(ni - 1) * f(ni))))
}

/// `P_n ln((z+1)/2) + R_n` for the chosen remainder form.
pub fn legendre_dnu_m0(n: u32, form: RemainderForm) -> CanonicalForm {
    p_plus(n as i64, 0).mul(&log_half_plus()) + remainder(n, form)
}
