//! Independent reference values for checking the main evaluation path.
//!
//! The hypergeometric series for `P_ν^μ` and its term-by-term degree
//! derivative, closed forms valid at integer degree, on-cut closed forms, a
//! degree recursion on the cut, trapezoidal contour quadrature of the
//! integer-degree Schläfli-type integrals, and finite differences in `ν`.
//! Nothing here uses the exact-form machinery.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::{digamma, gamma};

use crate::error::{Error, Result};
use crate::exactnum::digamma_int;
use crate::legendre_p::{p_on_cut, OrderSpec, Regime, Sign};
use crate::method::MethodChoice;
use crate::zdomain::{CutPoint, DomainError, OnCutPoint};

/// Truncation control for the series oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub max_terms: usize,
    /// Relative size of the estimated tail at which summation stops.
    pub tail_tol: f64,
    /// Largest accepted `|z-1|`; the series converges for `|z-1| < 2`.
    pub disc_limit: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            max_terms: 20_000,
            tail_tol: 1e-17,
            disc_limit: 1.9,
        }
    }
}

/// A value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub err_est: f64,
}

fn psi(k: i64) -> f64 {
    digamma_int(k).expect("positive argument").to_f64()
}

fn fact(k: i64) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

fn recip_gamma_int(k: i64) -> f64 {
    if k <= 0 {
        0.0
    } else {
        1.0 / fact(k - 1)
    }
}

fn is_integer(x: f64) -> bool {
    x.fract() == 0.0
}

/// Sums `first + Σ next(k)` where `next` maps the previous term to the
/// following one, stopping on a ratio-based tail estimate.
fn sum_terms(
    cfg: &SeriesConfig,
    start: usize,
    first: Complex64,
    mut next: impl FnMut(usize, Complex64) -> Complex64,
) -> Result<Estimate> {
    let mut sum = first;
    let mut term = first;
    for k in start + 1..start + cfg.max_terms {
        let t = next(k, term);
        sum += t;
        if t.norm() == 0.0 && term.norm() == 0.0 {
            return Ok(Estimate { value: sum, err_est: 0.0 });
        }
        let r = if term.norm() > 0.0 { t.norm() / term.norm() } else { 1.0 };
        term = t;
        if r < 1.0 {
            let tail = t.norm() * r / (1.0 - r);
            if tail <= cfg.tail_tol * sum.norm().max(1e-300) {
                return Ok(Estimate { value: sum, err_est: tail + f64::EPSILON * sum.norm() });
            }
        }
    }
    Err(Error::NonConvergence(format!(
        "series not converged after {} terms (|sum| = {:e})",
        cfg.max_terms,
        sum.norm()
    )))
}

/// `w = (z-1)/2` and the prefactor `((z+1)/(z-1))^{μ/2}`, principal branches.
fn series_point(mu: i64, z: &CutPoint, cfg: &SeriesConfig) -> Result<(Complex64, Complex64)> {
    let z = z.z();
    let d = (z - 1.0).norm();
    if d >= cfg.disc_limit {
        return Err(DomainError::OutsideDisc(d).into());
    }
    let pref = ((z + 1.0).ln() - (z - 1.0).ln()).scale(mu as f64 / 2.0).exp();
    Ok(((z - 1.0) / 2.0, pref))
}

/// Ferrers counterpart on `(-1, 1)`: `w = (x-1)/2`, prefactor `((1+x)/(1-x))^{μ/2}`.
fn cut_point(mu: i64, x: f64) -> Result<(Complex64, Complex64)> {
    if !(-1.0 < x && x < 1.0) {
        return Err(DomainError::OutsideInterval(x).into());
    }
    let pref = ((1.0 + x) / (1.0 - x)).powf(mu as f64 / 2.0);
    Ok((Complex64::new((x - 1.0) / 2.0, 0.0), Complex64::new(pref, 0.0)))
}

/// `Σ_k Γ(k+ν+1)/(k! Γ(ν-k+1) Γ(k-μ+1)) w^k`.
fn hyper_sum(nu: f64, mu: i64, w: Complex64, cfg: &SeriesConfig) -> Result<Estimate> {
    let k0 = mu.max(0);
    // Γ(k+ν+1)/(k!Γ(ν-k+1)) up to k0, then 1/(k0-μ)!
    let mut c = 1.0;
    for k in 1..=k0 {
        c *= (nu + k as f64) * (nu - k as f64 + 1.0) / k as f64;
    }
    let first = w.powi(k0 as i32) * c / fact(k0 - mu);
    sum_terms(cfg, k0 as usize, first, |k, prev| {
        let k = k as f64;
        prev * w * ((nu + k) * (nu - k + 1.0) / (k * (k - mu as f64)))
    })
}

/// `P_ν^μ(z)` from its hypergeometric series about `z = 1`.
pub fn p_series(nu: f64, mu: i64, z: &CutPoint, cfg: &SeriesConfig) -> Result<Estimate> {
    let (w, pref) = series_point(mu, z, cfg)?;
    let s = hyper_sum(nu, mu, w, cfg)?;
    Ok(Estimate {
        value: pref * s.value,
        err_est: pref.norm() * s.err_est,
    })
}

/// Ferrers `P_ν^μ(x)` on the cut from the same series.
pub fn p_series_on_cut(nu: f64, mu: i64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let (w, pref) = cut_point(mu, x)?;
    Ok((pref * hyper_sum(nu, mu, w, cfg)?.value).re)
}

/// Term-by-term degree derivative of the series (without prefactor).
fn dnu_hyper_sum(nu: f64, mu: i64, w: Complex64, cfg: &SeriesConfig) -> Result<Estimate> {
    let integer = is_integer(nu);
    if integer && nu < 0.0 {
        return Err(Error::ConstraintViolation("integer degree must be non-negative".into()));
    }
    let ratio = |k: f64| w * ((nu + k) * (nu - k + 1.0) / (k * (k - mu as f64)));
    let step = |k: f64| 1.0 / (nu + k) + 1.0 / (nu - k + 1.0);
    let k0 = mu.max(0);
    let last_finite = if integer { nu as i64 } else { i64::MAX };
    let mut finite = Complex64::new(0.0, 0.0);
    if k0 <= last_finite {
        let mut c = 1.0;
        let mut d = 0.0;
        for k in 1..=k0 {
            c *= (nu + k as f64) * (nu - k as f64 + 1.0) / k as f64;
            d += step(k as f64);
        }
        let mut t = w.powi(k0 as i32) * (c / fact(k0 - mu));
        if !integer {
            return sum_terms(cfg, k0 as usize, t * d, |k, _| {
                t *= ratio(k as f64);
                d += step(k as f64);
                t * d
            });
        }
        finite = t * d;
        for k in k0 + 1..=last_finite {
            t *= ratio(k as f64);
            d += step(k as f64);
            finite += t * d;
        }
    }
    // past k = n the ψ/Γ pole limit gives (-1)^j j! (k+n)!/(k!(k-μ)!) w^k, j = k-n-1
    let n = nu as i64;
    let k1 = (n + 1).max(mu);
    let j1 = k1 - n - 1;
    let sign = if j1 % 2 == 0 { 1.0 } else { -1.0 };
    let ln_fact = |a: i64, b: i64| (a + 1..=b).map(|j| (j as f64).ln()).sum::<f64>();
    let log_mag = ln_fact(0, j1) + ln_fact(k1, k1 + n) - ln_fact(0, k1 - mu);
    let first = w.powi(k1 as i32) * (sign * log_mag.exp());
    let tail = sum_terms(cfg, k1 as usize, first, |k, prev| {
        let kf = k as f64;
        let j = (k as i64 - n - 1) as f64;
        prev * w * (-j * (kf + n as f64) / (kf * (kf - mu as f64)))
    })?;
    Ok(Estimate {
        value: finite + tail.value,
        err_est: tail.err_est + f64::EPSILON * finite.norm(),
    })
}

/// `∂P_ν^μ(z)/∂ν` by differentiating the hypergeometric series term by term.
/// At integer `ν` the terms past `k = ν` use the exact `ψ/Γ` pole limit.
pub fn dnu_series(nu: f64, mu: i64, z: &CutPoint, cfg: &SeriesConfig) -> Result<Estimate> {
    let (w, pref) = series_point(mu, z, cfg)?;
    let s = dnu_hyper_sum(nu, mu, w, cfg)?;
    Ok(Estimate {
        value: pref * s.value,
        err_est: pref.norm() * s.err_est,
    })
}

/// The reflected-argument form of the term-differentiated series,
/// `π cot(πν) P - (sin πν/π)(...)Σ(-1)^k Γ(k+ν+1)Γ(k-ν)/(k!Γ(k-μ+1)) [ψ(k+ν+1)-ψ(k-ν)] w^k`,
/// for non-integer `ν`.
pub fn dnu_series_reflected(nu: f64, mu: i64, z: &CutPoint, cfg: &SeriesConfig) -> Result<Estimate> {
    if is_integer(nu) {
        return Err(Error::ConstraintViolation("reflected series needs non-integer degree".into()));
    }
    let (w, pref) = series_point(mu, z, cfg)?;
    let p = p_series(nu, mu, z, cfg)?;
    let k0 = mu.max(0);
    let sign = if k0 % 2 == 0 { 1.0 } else { -1.0 };
    let k0f = k0 as f64;
    let base = sign * gamma(k0f + nu + 1.0) * gamma(k0f - nu) / (fact(k0) * fact(k0 - mu));
    let mut dpsi = digamma(k0f + nu + 1.0) - digamma(k0f - nu);
    let mut term = w.powi(k0 as i32) * base;
    let mut sum = term * dpsi;
    let mut last = sum.norm();
    for k in k0 + 1..k0 + cfg.max_terms as i64 {
        let kf = k as f64;
        term *= -w * ((kf + nu) * (kf - 1.0 - nu) / (kf * (kf - mu as f64)));
        dpsi += 1.0 / (kf + nu) - 1.0 / (kf - 1.0 - nu);
        let t = term * dpsi;
        sum += t;
        let r = t.norm() / last.max(1e-300);
        last = t.norm();
        if r < 1.0 && t.norm() * r / (1.0 - r) <= cfg.tail_tol * sum.norm().max(1e-300) {
            let value = PI / (PI * nu).tan() * p.value - (PI * nu).sin() / PI * pref * sum;
            return Ok(Estimate {
                value,
                err_est: p.err_est * (PI / (PI * nu).tan()).abs() + 1e-15 * value.norm(),
            });
        }
    }
    Err(Error::NonConvergence("reflected degree-derivative series".into()))
}

/// Regularized `Σ_k k! (a)_k/(b)_k / Γ(c+k) x^k` with integer `c`, the
/// `₃F₂(1,1,a; b,c; x)/Γ(c)` combination.
fn regularized_f32(a: f64, b: f64, c: i64, x: Complex64, cfg: &SeriesConfig) -> Result<Estimate> {
    let k0 = (1 - c).max(0);
    // k0! (a)_{k0}/(b)_{k0} / Γ(c+k0)
    let mut first = fact(k0) * recip_gamma_int(c + k0);
    for j in 0..k0 {
        first *= (a + j as f64) / (b + j as f64);
    }
    sum_terms(cfg, k0 as usize, x.powi(k0 as i32) * first, |k, prev| {
        let kf = k as f64;
        prev * x * (kf * (a + kf - 1.0) / ((b + kf - 1.0) * (c as f64 + kf - 1.0)))
    })
}

/// `[∂P_ν^μ/∂ν]_{ν=n}` from the finite sum plus the `₃F₂` remainder.
pub fn dnu_series_closed(n: u32, mu: i64, z: &CutPoint, cfg: &SeriesConfig) -> Result<Estimate> {
    let (w, pref) = series_point(mu, z, cfg)?;
    let n = n as i64;
    let mut finite = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let c = fact(k + n) / (fact(k) * fact(n - k)) * recip_gamma_int(k - mu + 1) * (psi(k + n + 1) - psi(n - k + 1));
        finite += w.powi(k as i32) * c;
    }
    let f = regularized_f32((2 * n + 2) as f64, (n + 2) as f64, n + 2 - mu, -w, cfg)?;
    let c = fact(2 * n + 1) / fact(n + 1);
    let value = pref * (finite + w.powi((n + 1) as i32) * c * f.value);
    Ok(Estimate {
        value,
        err_est: (pref * w.powi((n + 1) as i32) * c).norm() * f.err_est,
    })
}

/// `[∂P_ν^μ/∂ν]_{ν=0} = ((z-1)/2)((z+1)/(z-1))^{μ/2} ₂F₁(1,1;2-μ;(1-z)/2)/Γ(2-μ)`.
pub fn dnu_at_degree_zero(mu: i64, z: &CutPoint, cfg: &SeriesConfig) -> Result<Estimate> {
    let (w, pref) = series_point(mu, z, cfg)?;
    let f = regularized_f32(1.0, 1.0, 2 - mu, -w, cfg)?;
    Ok(Estimate {
        value: pref * w * f.value,
        err_est: (pref * w).norm() * f.err_est,
    })
}

/// Closed forms on the cut for `[∂P_ν^{∓m}(x)/∂ν]_{ν=n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OnCutClosedForm {
    /// `∂P^{-m}` for `0 <= m <= n`.
    LowerOrder,
    /// `∂P^{+m}` from the lower-order form and `P_n^m`, `0 <= m <= n`.
    UpperOrder,
    /// `∂P^{-m}` at `n = 0`, `m > 0`.
    DegreeZero,
}

impl OnCutClosedForm {
    pub const ALL: [OnCutClosedForm; 3] = [
        OnCutClosedForm::LowerOrder,
        OnCutClosedForm::UpperOrder,
        OnCutClosedForm::DegreeZero,
    ];

    pub fn admits(self, n: u32, m: u32) -> bool {
        match self {
            OnCutClosedForm::LowerOrder | OnCutClosedForm::UpperOrder => m <= n,
            OnCutClosedForm::DegreeZero => n == 0 && m > 0,
        }
    }

    /// The order (with sign) whose degree derivative the form gives.
    pub fn order(self, n: u32, m: u32) -> OrderSpec {
        match self {
            OnCutClosedForm::UpperOrder => OrderSpec::plus(n, m),
            _ => OrderSpec::minus(n, m),
        }
    }
}

/// Value of an on-cut closed form at `x ∈ (-1, 1)`.
pub fn on_cut_closed(form: OnCutClosedForm, n: u32, m: u32, x: f64) -> Result<f64> {
    if !form.admits(n, m) {
        return Err(Error::ConstraintViolation(format!("{form:?} does not apply at n={n} m={m}")));
    }
    if !(-1.0 < x && x < 1.0) {
        return Err(DomainError::OutsideInterval(x).into());
    }
    let cfg = SeriesConfig::default();
    let (ni, mi) = (n as i64, m as i64);
    let y = (1.0 - x) / 2.0;
    let lp = ((1.0 + x) / 2.0).ln();
    let sgn = |k: i64| if k % 2 == 0 { 1.0 } else { -1.0 };
    let lower = |ni: i64, mi: i64| -> Result<f64> {
        let p = p_series_on_cut(ni as f64, -mi, x, &cfg)?;
        let s1: f64 = (0..=ni - mi)
            .map(|k| {
                sgn(k) * fact(k + ni + mi) * psi(k + ni + mi + 1) / (fact(k) * fact(k + mi) * fact(ni - mi - k))
                    * y.powi(k as i32)
            })
            .sum();
        let s2: f64 = (0..=ni)
            .map(|k| sgn(k) * fact(k + ni) * psi(k + ni + 1) / (fact(k) * fact(k + mi) * fact(ni - k)) * y.powi(k as i32))
            .sum();
        Ok(p * lp - (psi(ni + mi + 1) + psi(ni + 1)) * p
            + fact(ni - mi) / fact(ni + mi) * ((1.0 - x * x) / 4.0).powf(mi as f64 / 2.0) * s1
            + ((1.0 - x) / (1.0 + x)).powf(mi as f64 / 2.0) * s2)
    };
    match form {
        OnCutClosedForm::LowerOrder => lower(ni, mi),
        OnCutClosedForm::UpperOrder => {
            let p = p_series_on_cut(ni as f64, mi, x, &cfg)?;
            Ok(sgn(mi) * fact(ni + mi) / fact(ni - mi) * lower(ni, mi)? + (psi(ni + mi + 1) - psi(ni - mi + 1)) * p)
        }
        OnCutClosedForm::DegreeZero => {
            let p = p_series_on_cut(0.0, -mi, x, &cfg)?;
            let p_reflected = p_series_on_cut(0.0, -mi, -x, &cfg)?;
            let s: f64 = (0..mi)
                .map(|k| sgn(k) * psi(mi - k + 1) / (fact(k) * fact(mi - k)) * y.powi(k as i32))
                .sum();
            Ok(sgn(mi) * p_reflected * lp + psi(1) * p - sgn(mi) * psi(mi + 1) * p_reflected
                + sgn(mi) * ((1.0 - x * x) / 4.0).powf(-(mi as f64) / 2.0) * s)
        }
    }
}

/// Residual of the degree recursion on the cut,
/// `√(1-x²)∂P^{m+1}_n - (n-m)x∂P^m_n + (n+m)∂P^m_{n-1} - (xP^m_n - P^m_{n-1})`,
/// evaluated with the main degree-derivative and first-kind routes.
pub fn degree_recursion_residual(n: u32, m: u32, x: f64) -> Result<f64> {
    degree_recursion(n, m, x).map(|r| r.residual)
}

/// The recursion residual together with the size of its terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionResidual {
    /// `|LHS - RHS|`.
    pub residual: f64,
    /// Largest absolute value among the individual terms.
    pub scale: f64,
}

impl RecursionResidual {
    /// Residual relative to `max(scale, 1)`.
    pub fn relative(&self) -> f64 {
        self.residual / self.scale.max(1.0)
    }
}

/// As [`degree_recursion_residual`], also reporting the term scale.
pub fn degree_recursion(n: u32, m: u32, x: f64) -> Result<RecursionResidual> {
    if n == 0 {
        return Err(Error::ConstraintViolation("recursion needs n >= 1".into()));
    }
    let pt = OnCutPoint::principal(x)?;
    pt.require_interior()?;
    let dp = |n: u32, m: u32| crate::dnu_p::dp_dnu_on_cut(OrderSpec::plus(n, m), &pt, MethodChoice::Auto).map(|v| v.re);
    let p = |n: u32| {
        let o = OrderSpec::plus(n, m);
        let method = crate::legendre_p::p_methods(o)[0];
        p_on_cut(o, &pt, method).map(|v| v.numeric.re)
    };
    let (nf, mf) = (n as f64, m as f64);
    let terms = [
        (1.0 - x * x).sqrt() * dp(n, m + 1)?,
        -(nf - mf) * x * dp(n, m)?,
        (nf + mf) * dp(n - 1, m)?,
        -x * p(n)?,
        p(n - 1)?,
    ];
    Ok(RecursionResidual {
        residual: terms.iter().sum::<f64>().abs(),
        scale: terms.iter().fold(0.0, |a, t| a.max(t.abs())),
    })
}

/// Quadrature settings for the contour oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    /// Radius of the circle about `z`; `None` picks the admissible radius
    /// that minimises the largest quadrature term.
    pub radius: Option<f64>,
    pub nodes: usize,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { radius: None, nodes: 256 }
    }
}

/// Contour-quadrature result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourValue {
    pub value: Complex64,
    /// Node-halving difference plus the rounding scale of the sums.
    pub err_est: f64,
    /// Radius actually used about `z`.
    pub radius: f64,
    /// The integral that vanishes by analyticity when `m > n` (upper sign).
    pub vanishing_integral: Option<Complex64>,
}

/// Trapezoidal `(1/2πi)∮` over circles, tracking the largest weighted term.
struct Quadrature {
    nodes: usize,
    scale: Cell<f64>,
}

impl Quadrature {
    fn new(nodes: usize) -> Self {
        Self { nodes, scale: Cell::new(0.0) }
    }

    fn circle(&self, center: Complex64, r: f64, weight: Complex64, f: &dyn Fn(Complex64) -> Complex64) -> Complex64 {
        let mut peak = 0.0f64;
        let sum: Complex64 = (0..self.nodes)
            .map(|k| {
                let e = Complex64::from_polar(r, 2.0 * PI * k as f64 / self.nodes as f64);
                let v = f(center + e) * e;
                peak = peak.max(v.norm());
                v
            })
            .sum();
        self.scale.set(self.scale.get().max(peak * weight.norm()));
        weight * sum / self.nodes as f64
    }
}

fn ln_half_plus(t: Complex64) -> Complex64 {
    ((t + 1.0) / 2.0).ln()
}

struct Circles {
    z: Complex64,
    r: f64,
    /// Radius of the circle about `+1`.
    r_one: f64,
}

impl Circles {
    fn new(z: Complex64, r: f64) -> Self {
        let r_one = 0.45 * ((z - 1.0).norm() - r).min(2.0);
        Self { z, r, r_one }
    }
}

/// Distance from `z` to the nearest singular point of the integrands: `+1`
/// or the cut `(-∞, -1]` of `ln((t+1)/2)`.
fn admissible_bound(z: Complex64) -> f64 {
    let to_log_cut = if z.re >= -1.0 { (z + 1.0).norm() } else { z.im.abs() };
    (z - 1.0).norm().min(to_log_cut)
}

fn z2m1_half(z: Complex64, k: i64) -> Complex64 {
    ((z - 1.0).ln() + (z + 1.0).ln()).scale(k as f64 / 2.0).exp()
}

fn ratio_half(z: Complex64, k: i64) -> Complex64 {
    ((z + 1.0).ln() - (z - 1.0).ln()).scale(k as f64 / 2.0).exp()
}

fn contour_once(o: OrderSpec, c: &Circles, q: &Quadrature) -> (Complex64, Option<Complex64>) {
    let (n, m) = (o.n as i64, o.m as i64);
    let z = c.z;
    let one = Complex64::new(1.0, 0.0);
    // 1/(2^{n+1} πi) ∮ = 2^{-n} (1/2πi) ∮
    let scale = 0.5f64.powi(n as i32);
    let schlafli = |order: i64, log: bool, weight: Complex64| {
        q.circle(z, c.r, weight, &move |t: Complex64| {
            let v = (t * t - 1.0).powi(n as i32) / (t - z).powi((order + 1) as i32);
            if log {
                v * ln_half_plus(t)
            } else {
                v
            }
        })
    };
    let u_integrand = |a: i64, b: i64, log: bool| {
        move |u: Complex64| {
            let v = (u - 1.0).powi(a as i32) * (u + 1.0).powi(b as i32) / (u - z).powi((n + 1) as i32);
            if log {
                v * ln_half_plus(u)
            } else {
                v
            }
        }
    };
    let lz = ln_half_plus(z);
    let upper_pre = fact(n + m) / fact(n) * scale;
    let lower_pre = fact(n) / fact(n + m) * scale;
    let up_reg = || {
        let p = schlafli(n + m, false, upper_pre * z2m1_half(z, m));
        -p * lz
            + (psi(n + m + 1) - psi(n + 1)) * p
            + schlafli(n + m, true, upper_pre * z2m1_half(z, m))
            + schlafli(n - m, true, upper_pre * z2m1_half(z, -m))
    };
    match (o.sign, o.regime()) {
        (Sign::Plus, Regime::Regular) => (up_reg(), None),
        (Sign::Plus, Regime::Supercritical) => {
            let vanishing = schlafli(n - m, true, upper_pre * z2m1_half(z, -m));
            (schlafli(n + m, true, upper_pre * z2m1_half(z, m)) + vanishing, Some(vanishing))
        }
        (Sign::Minus, Regime::Regular) => {
            let p = q.circle(z, c.r, lower_pre * ratio_half(z, -m), &u_integrand(n - m, n + m, false));
            let v = fact(n - m) / fact(n + m) * up_reg() - (psi(n + m + 1) - psi(n - m + 1)) * p;
            (v, None)
        }
        (Sign::Minus, Regime::Supercritical) => {
            let w_minus = lower_pre * ratio_half(z, -m);
            let plain = u_integrand(n - m, n + m, false);
            let p = q.circle(z, c.r, w_minus, &plain) + q.circle(one, c.r_one, w_minus, &plain);
            let logged = u_integrand(n - m, n + m, true);
            let v = -p * lz - (psi(n + m + 1) - psi(n + 1)) * p
                + q.circle(z, c.r, lower_pre * ratio_half(z, m), &u_integrand(n + m, n - m, true))
                + q.circle(z, c.r, w_minus, &logged)
                + q.circle(one, c.r_one, w_minus, &logged);
            (v, None)
        }
    }
}

/// `[∂P_ν^{±m}(z)/∂ν]_{ν=n}` by trapezoidal quadrature of the integer-degree
/// contour integrals, with the non-integral terms added.
pub fn contour_dnu(o: OrderSpec, z: &CutPoint, cfg: &ContourConfig) -> Result<ContourValue> {
    let zc = z.z();
    let bound = admissible_bound(zc);
    if bound < 1e-6 {
        return Err(Error::Geometry(format!("z = {zc} is too close to a singular point")));
    }
    let nodes = cfg.nodes.max(8);
    let radius = match cfg.radius {
        Some(r) if r > 0.0 && r < bound => r,
        Some(r) => {
            return Err(Error::Geometry(format!(
                "radius {r} must lie in (0, {bound}) so that only t = z is enclosed"
            )))
        }
        None => {
            // keep (r/bound)^nodes below 1e-17 so the rule stays converged
            let top = 0.85f64.min(10f64.powf(-17.0 / nodes as f64)).max(0.2);
            (0..8)
                .map(|i| bound * (0.2 + (top - 0.2) * i as f64 / 7.0))
                .map(|r| {
                    let q = Quadrature::new(nodes);
                    contour_once(o, &Circles::new(zc, r), &q);
                    (r, q.scale.get())
                })
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(r, _)| r)
                .unwrap()
        }
    };
    let circles = Circles::new(zc, radius);
    let q = Quadrature::new(nodes);
    let (full, vanishing) = contour_once(o, &circles, &q);
    let (half, _) = contour_once(o, &circles, &Quadrature::new(nodes / 2));
    Ok(ContourValue {
        value: full,
        err_est: (full - half).norm() + 4.0 * f64::EPSILON * q.scale.get(),
        radius,
        vanishing_integral: vanishing,
    })
}

/// Derivative order for the finite-difference oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    First,
    Second,
}

/// Largest `|z-1|` accepted by the finite-difference oracle.
pub const FD_DISC: f64 = 1.5;

/// Central finite difference of the series `P_ν^μ` in `ν` at `ν = n`, with one
/// Richardson step; the error estimate is the Richardson correction.
pub fn fd_dnu(o: OrderSpec, z: &CutPoint, order: FdOrder) -> Result<Estimate> {
    let d = (z.z() - 1.0).norm();
    if d >= FD_DISC {
        return Err(DomainError::OutsideDisc(d).into());
    }
    if order == FdOrder::Second && !(o.sign == Sign::Plus && o.regime() == Regime::Supercritical) {
        return Err(Error::ConstraintViolation(
            "second degree derivative is available for P_n^m with m > n".into(),
        ));
    }
    let cfg = SeriesConfig::default();
    let mu = o.m as i64 * o.sign.as_i32() as i64;
    let n = o.n as f64;
    let p = |nu: f64| p_series(nu, mu, z, &cfg).map(|e| e.value);
    let (h, diff): (f64, Box<dyn Fn(f64) -> Result<Complex64>>) = match order {
        FdOrder::First => (1e-4, Box::new(|h| Ok((p(n + h)? - p(n - h)?) / (2.0 * h)))),
        FdOrder::Second => (2e-3, Box::new(|h| Ok((p(n + h)? - p(n)? * 2.0 + p(n - h)?) / (h * h)))),
    };
    let coarse = diff(h)?;
    let fine = diff(h / 2.0)?;
    let value = (fine * 4.0 - coarse) / 3.0;
    Ok(Estimate {
        value,
        err_est: (fine - coarse).norm() / 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> CutPoint {
        CutPoint::new(re, im).unwrap()
    }

    #[test]
    fn series_low_degrees() {
        let cfg = SeriesConfig::default();
        assert!((p_series(0.0, 0, &pt(1.3, 0.4), &cfg).unwrap().value - 1.0).norm() < 1e-15);
        assert!((p_series(1.0, 0, &pt(1.5, 0.0), &cfg).unwrap().value.re - 1.5).abs() < 1e-15);
        assert!(p_series(0.5, 0, &pt(3.0, 0.0), &cfg).is_err());
    }

    #[test]
    fn degree_zero_derivative_is_the_log() {
        let cfg = SeriesConfig::default();
        let z = pt(1.5, 0.0);
        let expected = (1.25f64).ln();
        assert!((dnu_series(0.0, 0, &z, &cfg).unwrap().value.re - expected).abs() < 1e-13);
        assert!((dnu_at_degree_zero(0, &z, &cfg).unwrap().value.re - expected).abs() < 1e-13);
        let fd = fd_dnu(OrderSpec::plus(0, 0), &z, FdOrder::First).unwrap();
        assert!((fd.value.re - expected).abs() < 1e-8);
    }

    #[test]
    fn contour_geometry_is_validated() {
        let cfg = ContourConfig { radius: Some(2.5), nodes: 64 };
        assert!(contour_dnu(OrderSpec::plus(1, 0), &pt(3.0, 0.0), &cfg).is_err());
        assert!(contour_dnu(OrderSpec::plus(1, 0), &pt(1.0 + 1e-9, 0.0), &ContourConfig::default()).is_err());
    }
}
