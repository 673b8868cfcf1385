//! Associated Legendre functions of the second kind `Q_n^{±m}(z)` of integer
//! degree and order, obtained from degree derivatives of the first-kind
//! functions, together with `Q_{-n-1}^m`, the polynomials `W_{n-1}^{±m}` and
//! `[∂Q_ν^m/∂ν]` at `ν = n` and `ν = -n-1` for `m > n`.

use std::fmt;

use num_complex::Complex64;
use num_traits::One;
use once_cell::sync::Lazy;

use crate::cache::Memo;
use crate::canonical::{leibniz, CanonicalForm, LogFactor};
use crate::dnu_p::{
    d2p_form, dp_default, f, p_minus, p_minus_reflected, p_plus, ps, sgn, sum_ab, two_pow, Prefactor,
};
use crate::error::{Error, Result};
use crate::exactnum::{frac, rat, GammaLinear, Rational};
use crate::legendre_p::{on_cut_combine, p_default, IdentityCheck, OrderSpec, Regime, Sign};
use crate::method::{MethodChoice, MethodId};
use crate::zdomain::{CutPoint, EvalPoint, OnCutKind, OnCutPoint, Side};

/// A second-kind value with its exact form.
#[derive(Debug, Clone, PartialEq)]
pub struct QValue {
    pub numeric: Complex64,
    pub exact: Option<CanonicalForm>,
    /// Set when the value is the zero produced by the Γ ratio for `m > n`
    /// with the lower sign.
    pub gamma_ratio_zero: bool,
}

impl QValue {
    fn from_form(form: CanonicalForm, p: &EvalPoint) -> Self {
        Self {
            numeric: form.eval(p),
            exact: Some(form),
            gamma_ratio_zero: false,
        }
    }

    /// Coefficient of `ln((z+1)/(z-1))` in the exact form.
    pub fn log_coefficient(&self) -> Option<CanonicalForm> {
        self.exact.as_ref().and_then(CanonicalForm::log_ratio_coefficient)
    }
}

/// Representations of `Q_n^{±m}` for a given order.
pub fn q_methods(o: OrderSpec) -> &'static [MethodId] {
    use MethodId::*;
    match (o.regime(), o.sign) {
        (Regime::Regular, _) => &[R66, R67, W610, W611, W612, W613, W614],
        (Regime::Supercritical, Sign::Plus) => &[R617, R619, C620],
        (Regime::Supercritical, Sign::Minus) => &[],
    }
}

/// Which of the two equivalent sign choices a `W` representation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WBranch {
    /// Expansion about `z = 1`.
    Upper,
    /// Expansion about `z = -1`.
    Lower,
}

impl WBranch {
    fn s(self) -> i64 {
        match self {
            WBranch::Upper => 1,
            WBranch::Lower => -1,
        }
    }
}

/// `W_{n-1}^{±m}` methods.
pub const W_METHODS: [MethodId; 5] = [MethodId::W610, MethodId::W611, MethodId::W612, MethodId::W613, MethodId::W614];

/// Methods for `Q_{-n-1}^m`.
pub const NEGDEG_METHODS: [MethodId; 3] = [MethodId::C623, MethodId::R624, MethodId::VIA622];

/// Which degree `[∂Q_ν^m/∂ν]` is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreePoint {
    /// `ν = n`.
    PlusN,
    /// `ν = -n-1`.
    MinusNMinus1,
}

impl fmt::Display for DegreePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreePoint::PlusN => "plus_n",
            DegreePoint::MinusNMinus1 => "minus_n_minus_1",
        })
    }
}

/// `d^k [(z-1)^a (z+1)^b ln((z+1)/(z-1))]`.
fn d_log_ratio(a: i64, b: i64, k: u32) -> CanonicalForm {
    leibniz(a, b, LogFactor::HalfPlus, k) - leibniz(a, b, LogFactor::HalfMinus, k)
}

/// `d^k [(z-1)^a (z+1)^b ln((z-1)(z+1)/4)]`.
fn d_log_product(a: i64, b: i64, k: u32) -> CanonicalForm {
    leibniz(a, b, LogFactor::HalfPlus, k) + leibniz(a, b, LogFactor::HalfMinus, k)
}

fn sum_ab_s(
    s: i64,
    range: impl Iterator<Item = i64>,
    term: impl Fn(i64) -> (GammaLinear, i64, i64),
) -> CanonicalForm {
    sum_ab(range, |k| {
        let (c, i, j) = term(k);
        if s == 1 {
            (c, i, j)
        } else {
            (c, j, i)
        }
    })
}

/// Times `((z+s)/(z-s))^{k/2}`.
fn ratio_s(form: CanonicalForm, s: i64, k: i64) -> CanonicalForm {
    form.ratio(s * k)
}

fn sp(s: i64, k: i64) -> Rational {
    if s == 1 {
        Rational::one()
    } else {
        sgn(k)
    }
}

static W_CACHE: Lazy<Memo<(u32, u32, MethodId, WBranch), CanonicalForm>> = Lazy::new(Memo::new);

/// `W_{n-1}^m` for `0 <= m <= n` by the chosen representation and branch.
/// `W613` and `W614` have a single form and ignore the branch.
pub fn w_form_branch(n: u32, m: u32, method: MethodId, branch: WBranch) -> Result<CanonicalForm> {
    if m > n {
        return Err(Error::ConstraintViolation(format!("W needs m <= n, got n={n} m={m}")));
    }
    if !W_METHODS.contains(&method) {
        return Err(Error::invalid(method, "not a W representation"));
    }
    W_CACHE.get_or_try(&(n, m, method, branch), || Ok(build_w(n as i64, m as i64, method, branch.s())))
}

fn build_w(n: i64, m: i64, method: MethodId, s: i64) -> CanonicalForm {
    let p = p_plus(n, m);
    let half = frac(1, 2);
    let sr = rat(s);
    match method {
        MethodId::W610 => {
            let head = p.scale(&ps(n + 1).scale(&sr));
            let t1 = sum_ab_s(s, 0..m, |k| {
                let c = -&sr * sp(s, n) * sp(-s, m) * &half * f(n + m) / f(n - m) * sp(-s, k) * f(k + n - m)
                    * f(m - k - 1)
                    / (f(k) * f(n + m - k));
                (gl(c), k, 0)
            })
            .quarter(-m);
            let t2 = sum_ab_s(s, 0..=n - m, |k| {
                let c = -&sr * sp(s, n + m) * &half * sp(s, k) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                (ps(k + m + 1).scale(&c), k, 0)
            })
            .quarter(m);
            let t3 = ratio_s(
                sum_ab_s(s, 0..=n, |k| {
                    let c = -&sr * sp(s, n) * &half * f(n + m) / f(n - m) * sp(s, k) * f(k + n)
                        / (f(k) * f(k + m) * f(n - k));
                    (ps(k + 1).scale(&c), k, 0)
                }),
                s,
                -m,
            );
            head + t1 + t2 + t3
        }
        MethodId::W611 => {
            let head = p.scale(&(&ps(n + m + 1) + &ps(n - m + 1)).scale(&(&sr * &half)));
            let t1 = ratio_s(
                sum_ab_s(s, 0..m, |k| {
                    let c = -&sr * sp(s, n) * sgn(m) * &half * sp(-s, k) * f(k + n) * f(m - k - 1) / (f(k) * f(n - k));
                    (gl(c), k, 0)
                }),
                s,
                m,
            );
            let t2 = sum_ab_s(s, 0..=n - m, |k| {
                let c = -&sr * sp(s, n + m) * &half * sp(s, k) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                (ps(k + 1).scale(&c), k, 0)
            })
            .quarter(m);
            let t3 = ratio_s(
                sum_ab_s(s, 0..=n, |k| {
                    let c = -&sr * sp(s, n) * &half * f(n + m) / f(n - m) * sp(s, k) * f(k + n)
                        / (f(k) * f(k + m) * f(n - k));
                    (ps(k + m + 1).scale(&c), k, 0)
                }),
                s,
                -m,
            );
            head + t1 + t2 + t3
        }
        MethodId::W612 => {
            let pre = &half * f(n) * f(n + m);
            let t1 = ratio_s(
                sum_ab_s(s, 1..=m, |k| {
                    let c = &sr * &pre * sgn(k) * f(k - 1) / (f(k + n) * f(k + n - m) * f(m - k));
                    (gl(c), n + k, -k)
                }),
                s,
                m,
            );
            let t2 = ratio_s(
                sum_ab_s(s, 0..m, |k| {
                    let c = -&sr * sgn(m) * &pre * sgn(k) * f(m - k - 1) / (f(k) * f(n - k) * f(n + m - k));
                    (gl(c), k, n - k)
                }),
                s,
                m,
            );
            let t3 = ratio_s(
                sum_ab_s(s, 0..=n - m, |k| {
                    let c = &sr * &pre / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                    let psis = &(&ps(n - m - k + 1) + &ps(n - k + 1)) - &(&ps(k + m + 1) + &ps(k + 1));
                    (psis.scale(&c), k, n - k)
                }),
                s,
                -m,
            );
            t1 + t2 + t3
        }
        MethodId::W613 | MethodId::W614 => {
            let low: CanonicalForm = (0..m)
                .map(|k| {
                    let c = &half * f(n + m) / f(n - m) * sgn(k) * frac(2 * k + 1, (n - k) * (k + n + 1));
                    (p_minus_reflected(k, m) - p_minus(k, m).scale_rat(&sgn(n))).scale_rat(&c)
                })
                .sum();
            let high: CanonicalForm = if method == MethodId::W613 {
                (0..n - m)
                    .filter(|k| (k + n + m) % 2 == 1)
                    .map(|k| {
                        let c = frac(2 * k + 2 * m + 1, (n - m - k) * (k + n + m + 1))
                            * (Rational::one() + f(k) * f(n + m) / (f(k + 2 * m) * f(n - m)));
                        p_plus(k + m, m).scale_rat(&c)
                    })
                    .sum()
            } else {
                let top = if n - m >= 1 { (n - m - 1) / 2 } else { -1 };
                (0..=top)
                    .map(|k| {
                        let c = &half * frac(2 * n - 4 * k - 1, (n - k) * (2 * k + 1))
                            * (Rational::one() + f(n + m) * f(n - m - 2 * k - 1) / (f(n - m) * f(n + m - 2 * k - 1)));
                        p_plus(n - 2 * k - 1, m).scale_rat(&c)
                    })
                    .sum()
            };
            low + high
        }
        _ => unreachable!("validated by caller"),
    }
}

fn gl(r: Rational) -> GammaLinear {
    GammaLinear::from_rational(r)
}

/// `W_{n-1}^{±m}` with the upper branch; the lower sign follows from the
/// factorial ratio.
pub fn w_form(o: OrderSpec, method: MethodId) -> Result<CanonicalForm> {
    let w = w_form_branch(o.n, o.m, method, WBranch::Upper)?;
    Ok(match o.sign {
        Sign::Plus => w,
        Sign::Minus => w.scale_rat(&lower_ratio(o)),
    })
}

/// `W_{n-1}^{±m}` at `z`.
pub fn w_poly(o: OrderSpec, z: &CutPoint, method: MethodId, real_side: Side) -> Result<QValue> {
    let form = w_form(o, method)?;
    Ok(QValue::from_form(form, &EvalPoint::from_cut(z, real_side)))
}

fn lower_ratio(o: OrderSpec) -> Rational {
    let (n, m) = (o.n as i64, o.m as i64);
    f(n - m) / f(n + m)
}

static Q_CACHE: Lazy<Memo<(OrderSpec, MethodId), CanonicalForm>> = Lazy::new(Memo::new);

/// Exact form of `Q_n^{±m}` by the chosen representation.
pub fn q_form(o: OrderSpec, method: MethodId) -> Result<CanonicalForm> {
    if !q_methods(o).contains(&method) {
        return Err(Error::invalid(method, format!("not a representation of Q for {o}")));
    }
    Q_CACHE.get_or_try(&(o, method), || Ok(build_q(o, method)))
}

fn build_q(o: OrderSpec, method: MethodId) -> CanonicalForm {
    let (n, m) = (o.n as i64, o.m as i64);
    let lr = CanonicalForm::log_ratio();
    let half = frac(1, 2);
    // signed order: +m or -m
    let sm = m * o.sign.as_i32() as i64;
    match method {
        MethodId::R66 => {
            let norm = Rational::one() / (two_pow(n + 1) * f(n));
            -p_default(o).mul(&lr).scale_rat(&half)
                + d_log_ratio(n, n, (n + sm) as u32).mul_z2m1_half_power(sm).scale_rat(&norm)
                + d_log_ratio(n, n, (n - sm) as u32)
                    .mul_z2m1_half_power(-sm)
                    .scale_rat(&(&norm * f(n + sm) / f(n - sm)))
        }
        MethodId::R67 => {
            let norm = Rational::one() / (two_pow(n + 1) * f(n - sm));
            -p_default(o).mul(&lr).scale_rat(&half)
                + d_log_ratio(n - m, n + m, o.n).ratio(-m).scale_rat(&norm)
                + d_log_ratio(n + m, n - m, o.n).ratio(m).scale_rat(&norm)
        }
        MethodId::W610 | MethodId::W611 | MethodId::W612 | MethodId::W613 | MethodId::W614 => {
            p_default(o).mul(&lr).scale_rat(&half) - w_form(o, method).expect("regular order")
        }
        MethodId::R617 => crate::canonical::d_z2m1_power(-n - 1, (m - n - 1) as u32)
            .mul_z2m1_half_power(m)
            .scale_rat(&(sgn(n + 1) * two_pow(n) * f(n))),
        MethodId::R619 => d_log_ratio(n, n, (n + m) as u32)
            .mul_z2m1_half_power(m)
            .scale_rat(&(Rational::one() / (two_pow(n + 1) * f(n)))),
        MethodId::C620 => (p_minus(n, m) - p_minus_reflected(n, m).scale_rat(&sgn(n)))
            .scale_rat(&(sgn(n + m + 1) * &half * f(n + m) * f(m - n - 1))),
        _ => unreachable!("validated by caller"),
    }
}

/// Exact form of `Q_n^{±m}` assembled directly from the degree derivatives of
/// `P` at `z` and `-z`, with the `iπ` branch of the given half plane.
pub fn q_via_degree_derivative(o: OrderSpec, side: Side) -> Result<CanonicalForm> {
    let (n, m) = (o.n as i64, o.m as i64);
    let up = OrderSpec::plus(o.n, o.m);
    let dp = dp_default(up);
    let bridge = dp.scale_rat(&frac(1, 2)) - dp.reflect(side).scale_rat(&(sgn(n) * frac(1, 2)));
    match (o.regime(), o.sign) {
        (Regime::Supercritical, Sign::Minus) => Err(Error::ConstraintViolation(format!(
            "Q_n^-m with m > n is the zero of a Gamma ratio, got n={n} m={m}"
        ))),
        (Regime::Supercritical, Sign::Plus) => Ok(bridge),
        (Regime::Regular, sign) => {
            let s = rat(if side == Side::Above { 1 } else { -1 });
            let q = bridge - p_plus(n, m).mul(&CanonicalForm::i_pi()).scale_rat(&(s * frac(1, 2)));
            Ok(match sign {
                Sign::Plus => q,
                Sign::Minus => q.scale_rat(&lower_ratio(o)),
            })
        }
    }
}

/// `Q_n^{±m}(z)`. For `m > n` with the lower sign, returns the Γ-ratio zero
/// with [`QValue::gamma_ratio_zero`] set.
pub fn q_eval(o: OrderSpec, z: &CutPoint, method: MethodChoice, real_side: Side) -> Result<QValue> {
    let point = EvalPoint::from_cut(z, real_side);
    if o.regime() == Regime::Supercritical && o.sign == Sign::Minus {
        if let MethodChoice::One(id) = method {
            if !q_methods(OrderSpec::plus(o.n, o.m)).contains(&id) {
                return Err(Error::invalid(id, format!("not a representation of Q for {o}")));
            }
        }
        return Ok(QValue {
            numeric: Complex64::new(0.0, 0.0),
            exact: Some(CanonicalForm::zero()),
            gamma_ratio_zero: true,
        });
    }
    let id = match method {
        MethodChoice::Auto => q_methods(o)[0],
        MethodChoice::One(id) => id,
    };
    Ok(QValue::from_form(q_form(o, id)?, &point))
}

fn require_super(n: u32, m: u32) -> Result<()> {
    if m <= n {
        Err(Error::ConstraintViolation(format!("requires m > n, got n={n} m={m}")))
    } else {
        Ok(())
    }
}

/// Exact form of `Q_{-n-1}^m` for `m > n`.
pub fn q_negdeg_form(n: u32, m: u32, method: MethodId) -> Result<CanonicalForm> {
    require_super(n, m)?;
    let (ni, mi) = (n as i64, m as i64);
    match method {
        MethodId::C623 => Ok((p_minus(ni, mi) + p_minus_reflected(ni, mi).scale_rat(&sgn(ni)))
            .scale_rat(&(sgn(ni + mi) * frac(1, 2) * f(ni + mi) * f(mi - ni - 1)))),
        MethodId::R624 => Ok(d_log_product(ni, ni, n + m)
            .mul_z2m1_half_power(mi)
            .scale_rat(&(-Rational::one() / (two_pow(ni + 1) * f(ni))))),
        MethodId::VIA622 => {
            let o = OrderSpec::plus(n, m);
            Ok(q_form(o, MethodId::R617)? - dp_default(o))
        }
        other => Err(Error::invalid(other, "not a representation of Q_{-n-1}^m")),
    }
}

/// `Q_{-n-1}^m(z)` for `m > n`.
pub fn q_negdeg(n: u32, m: u32, z: &CutPoint, method: MethodId, real_side: Side) -> Result<QValue> {
    let form = q_negdeg_form(n, m, method)?;
    Ok(QValue::from_form(form, &EvalPoint::from_cut(z, real_side)))
}

/// On-cut value `((-1)^m/2)[e^{∓iπm/2} Q(x+i0) + e^{±iπm/2} Q(x-i0)]`.
pub fn q_on_cut(o: OrderSpec, x: &OnCutPoint, method: MethodChoice) -> Result<Complex64> {
    if o.regime() == Regime::Supercritical && o.sign == Sign::Minus {
        x.require_interior()?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    let id = match method {
        MethodChoice::Auto => q_methods(o)[0],
        MethodChoice::One(id) => id,
    };
    on_cut_combine(&q_form(o, id)?, o, x, OnCutKind::Second)
}

static DQ_CACHE: Lazy<Memo<(u32, u32, DegreePoint, Side), CanonicalForm>> = Lazy::new(Memo::new);

/// Exact form of `[∂Q_ν^m/∂ν]` at `ν = n` or `ν = -n-1`, `m > n`, for the
/// half plane `side`.
pub fn dq_form(n: u32, m: u32, at: DegreePoint, side: Side) -> Result<CanonicalForm> {
    require_super(n, m)?;
    DQ_CACHE.get_or_try(&(n, m, at, side), || {
        let (ni, mi) = (n as i64, m as i64);
        let lower = OrderSpec::minus(n, m);
        let pm = p_minus(ni, mi);
        let dpm = dp_default(lower);
        let s = rat(if side == Side::Above { 1 } else { -1 });
        let i_pi_p = pm.mul(&CanonicalForm::i_pi()).scale_rat(&s);
        let psi = &ps(ni + mi + 1) - &ps(mi - ni);
        let c = sgn(ni + mi) * frac(1, 2) * f(ni + mi) * f(mi - ni - 1);
        let reflected = dpm.reflect(side).scale_rat(&sgn(ni));
        Ok(match at {
            DegreePoint::PlusN => {
                q_form(OrderSpec::plus(n, m), MethodId::C620)?.scale(&psi) + (i_pi_p - dpm + reflected).scale_rat(&c)
            }
            DegreePoint::MinusNMinus1 => {
                -q_negdeg_form(n, m, MethodId::C623)?.scale(&psi) - (i_pi_p + dpm + reflected).scale_rat(&c)
            }
        })
    })
}

/// `[∂Q_ν^m(z)/∂ν]` at `ν = n` or `ν = -n-1` for `m > n`.
pub fn dq_dnu(n: u32, m: u32, z: &CutPoint, at: DegreePoint, real_side: Side) -> Result<QValue> {
    let point = EvalPoint::from_cut(z, real_side);
    let form = dq_form(n, m, at, point.side)?;
    Ok(QValue::from_form(form, &point))
}

/// `[∂Q_ν^m/∂ν]_{ν=n}` from the second degree derivatives of `P` at `z`
/// and `-z`.
pub fn dq_via_second_derivatives(n: u32, m: u32, side: Side) -> Result<CanonicalForm> {
    require_super(n, m)?;
    let o = OrderSpec::plus(n, m);
    let s = rat(if side == Side::Above { 1 } else { -1 });
    let d2 = d2p_form(n, m, MethodId::R532)?;
    Ok(-dp_default(o).mul(&CanonicalForm::i_pi()).scale_rat(&(s * frac(1, 2)))
        + d2.scale_rat(&frac(1, 4))
        - d2.reflect(side).scale_rat(&(sgn(n as i64) * frac(1, 4))))
}

/// Results of the two `m > n` bridge identities at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeCheck {
    /// `Q_n^m = ½∂P(z) - ((-1)^n/2)∂P(-z)`.
    pub first_derivative: IdentityCheck,
    /// `∂Q/∂ν` from second derivatives against the closed assembly.
    pub second_derivative: IdentityCheck,
}

impl BridgeCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.first_derivative.holds(tol) && self.second_derivative.holds(tol)
    }
}

/// Checks both bridges between `Q` and degree derivatives of `P` for `m > n`.
pub fn d2p_bridge_check(n: u32, m: u32, z: &CutPoint, real_side: Side) -> Result<BridgeCheck> {
    require_super(n, m)?;
    let point = EvalPoint::from_cut(z, real_side);
    let o = OrderSpec::plus(n, m);
    let q = q_form(o, MethodId::R617)?;
    let bridge = q_via_degree_derivative(o, point.side)?;
    let dq = dq_form(n, m, DegreePoint::PlusN, point.side)?;
    let dq2 = dq_via_second_derivatives(n, m, point.side)?;
    Ok(BridgeCheck {
        first_derivative: IdentityCheck::new(q.eval(&point), bridge.eval(&point), Some(q == bridge)),
        second_derivative: IdentityCheck::new(dq.eval(&point), dq2.eval(&point), Some(dq == dq2)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> (Complex64, EvalPoint) {
        let c = CutPoint::new(1.8, 0.6).unwrap();
        (c.z(), EvalPoint::from_cut(&c, Side::Above))
    }

    #[test]
    fn lowest_degree_examples() {
        let (z, p) = z();
        let q00 = q_form(OrderSpec::plus(0, 0), MethodId::R66).unwrap();
        assert!((q00.eval(&p) - 0.5 * ((z + 1.0) / (z - 1.0)).ln()).norm() < 1e-14);
        let q01 = q_form(OrderSpec::plus(0, 1), MethodId::R617).unwrap();
        assert!((q01.eval(&p) + 1.0 / (z * z - 1.0).sqrt()).norm() < 1e-14);
        let q12 = q_form(OrderSpec::plus(1, 2), MethodId::R617).unwrap();
        assert!((q12.eval(&p) - 2.0 / (z * z - 1.0)).norm() < 1e-14);
        let w = w_form(OrderSpec::plus(1, 0), MethodId::W610).unwrap();
        assert_eq!(w, CanonicalForm::constant(GammaLinear::one()));
    }

    #[test]
    fn negative_degree_example() {
        let (z, p) = z();
        for method in NEGDEG_METHODS {
            let v = q_negdeg_form(0, 1, method).unwrap().eval(&p);
            assert!((v + z / (z * z - 1.0).sqrt()).norm() < 1e-14, "{method}");
        }
    }
}
