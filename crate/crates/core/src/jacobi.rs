//! Jacobi polynomials `P_n^{(α,β)}(z)` at integer parameters, their
//! derivatives with respect to `β`, and the Legendre links built on them.
//!
//! Every explicit representation is stored once as a list of terms
//! `Γ/ψ-monomial × basis element`. At integer parameters the Γ and ψ factors
//! are replaced by their limits from generic nearby parameters, which gives
//! exact polynomials with [`GammaLinear`] coefficients; at real parameters the
//! same terms are evaluated in double precision.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::cache::Memo;
use crate::canonical::{leibniz, CanonicalForm, LogFactor};
use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, digamma_int, factorial, frac, rat, rat_big, GammaFactor, GammaLinear, GammaMonomial, ParamArg,
    Rational, SingularError,
};
use crate::legendre_p::{p_default, IdentityCheck, OrderSpec};
use crate::method::{MethodChoice, MethodId};
use crate::poly::{Poly, RatFn};
use crate::zdomain::{CutPoint, EvalPoint, Side};

/// Degree and integer parameters of a Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: i64,
    pub beta: i64,
}

impl JacobiParams {
    pub fn new(n: u32, alpha: i64, beta: i64) -> Self {
        Self { n, alpha, beta }
    }

    /// Parameters with `α` and `β` exchanged.
    pub fn swapped(self) -> Self {
        Self::new(self.n, self.beta, self.alpha)
    }

    /// True when `Γ(2n+α+β+1)/Γ(n+α+β+1)` vanishes, so the degree drops below `n`.
    pub fn degree_degenerate(&self) -> bool {
        let n = self.n as i64;
        let ratio = GammaMonomial::new(
            Rational::one(),
            vec![
                GammaFactor::Gamma(ParamArg::new(2 * n + 1, 1, 1)),
                GammaFactor::RecipGamma(ParamArg::new(n + 1, 1, 1)),
            ],
        );
        ratio.limit(self.alpha, self.beta).is_ok_and(|v| v.is_zero())
    }
}

impl fmt::Display for JacobiParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}^({},{})", self.n, self.alpha, self.beta)
    }
}

/// Variable in which a [`PolyCF`] is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Powers of `z`.
    Monomial,
    /// Powers of `(z-1)/2`.
    HalfMinus,
    /// Powers of `(z+1)/2`.
    HalfPlus,
    /// `((z+1)/2)^lead` times powers of `(z-1)/(z+1)`.
    Ratio { lead: u32 },
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Monomial => f.write_str("z"),
            Basis::HalfMinus => f.write_str("(z-1)/2"),
            Basis::HalfPlus => f.write_str("(z+1)/2"),
            Basis::Ratio { lead } => write!(f, "((z+1)/2)^{lead} * ((z-1)/(z+1))"),
        }
    }
}

/// A polynomial as coefficients over an explicit basis variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyCF {
    basis: Basis,
    coeffs: Vec<GammaLinear>,
}

fn half_power(shift: i64, k: u32) -> Poly {
    Poly::linear_power(shift, k).scale_rat(&(Rational::one() / rat_big(num_bigint::BigInt::one() << k)))
}

/// `((z-1)/2)^i ((z+1)/2)^j`.
fn half_product(i: u32, j: u32) -> Poly {
    half_power(-1, i).mul(&half_power(1, j))
}

impl PolyCF {
    /// Expands `p` in `basis`. Fails only for a ratio basis whose leading
    /// power is below the degree of `p`.
    pub fn from_poly(p: &Poly, basis: Basis) -> Option<Self> {
        let coeffs = match basis {
            Basis::Monomial => p.coeffs().to_vec(),
            Basis::HalfMinus | Basis::HalfPlus => {
                let c = if basis == Basis::HalfMinus { rat(1) } else { rat(-1) };
                let mut scale = Rational::one();
                p.taylor_shift(&c)
                    .into_iter()
                    .map(|d| {
                        let out = d.scale(&scale);
                        scale *= rat(2);
                        out
                    })
                    .collect()
            }
            Basis::Ratio { lead } => {
                if p.degree().is_some_and(|d| d > lead as usize) {
                    return None;
                }
                // p = Σ c_k a^k (a+1)^{lead-k} with a = (z-1)/2
                let d = Self::from_poly(p, Basis::HalfMinus)?.coeffs;
                let lead = lead as i64;
                let mut c: Vec<GammaLinear> = Vec::with_capacity(lead as usize + 1);
                for j in 0..=lead {
                    let mut v = d.get(j as usize).cloned().unwrap_or_else(GammaLinear::zero);
                    for (k, ck) in c.iter().enumerate() {
                        let k = k as i64;
                        v -= &ck.scale(&rat_big(binomial(lead - k, j - k)));
                    }
                    c.push(v);
                }
                c
            }
        };
        Some(Self::new(basis, coeffs))
    }

    pub fn new(basis: Basis, mut coeffs: Vec<GammaLinear>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[GammaLinear] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The same polynomial in powers of `z`.
    pub fn to_poly(&self) -> Poly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::new(vec![]), |acc, (k, c)| {
                let k = k as u32;
                let elem = match self.basis {
                    Basis::Monomial => Poly::linear_power(0, k),
                    Basis::HalfMinus => half_power(-1, k),
                    Basis::HalfPlus => half_power(1, k),
                    Basis::Ratio { lead } => half_product(k, lead - k),
                };
                acc.add(&elem.scale(c))
            })
    }

    /// Re-expands in another basis.
    pub fn in_basis(&self, basis: Basis) -> Option<Self> {
        Self::from_poly(&self.to_poly(), basis)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.to_poly().eval(z)
    }
}

impl fmt::Display for PolyCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let var = match self.basis {
            Basis::Monomial => "z".to_string(),
            Basis::HalfMinus => "a".to_string(),
            Basis::HalfPlus => "b".to_string(),
            Basis::Ratio { lead } => {
                write!(f, "b^{lead} * (")?;
                "r".to_string()
            }
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*{var}"),
                _ => format!("({c})*{var}^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))?;
        if let Basis::Ratio { .. } = self.basis {
            f.write_str(")")?;
        }
        match self.basis {
            Basis::Monomial => Ok(()),
            Basis::HalfMinus => f.write_str("  [a = (z-1)/2]"),
            Basis::HalfPlus => f.write_str("  [b = (z+1)/2]"),
            Basis::Ratio { .. } => f.write_str("  [b = (z+1)/2, r = (z-1)/(z+1)]"),
        }
    }
}

/// A Jacobi polynomial together with its degree-degeneracy flag.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiPoly {
    pub poly: PolyCF,
    pub degree_degenerate: bool,
}

/// `∂P/∂β` as a polynomial, with the coefficients over `P_0..P_n` for the
/// expansion representations.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaDerivative {
    pub poly: PolyCF,
    pub expansion: Option<Vec<GammaLinear>>,
}

/// Basis element multiplying one monomial of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Elem {
    HalfMinus(u32),
    HalfPlus(u32),
    /// `((z+1)/2)^n ((z-1)/(z+1))^k`.
    Ratio(u32),
    /// `P_k^{(α,β)}(z)`.
    Jacobi(u32),
}

#[derive(Debug, Clone)]
struct Term {
    coeff: GammaMonomial,
    elem: Elem,
}

const fn arg(c: i64, a: i64, b: i64) -> ParamArg {
    ParamArg::new(c, a, b)
}

fn fact_rat(k: i64) -> Rational {
    rat_big(factorial(k as u32))
}

fn sgn(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Summand of a polynomial representation, without the `1/(k!(n-k)!)` and sign.
fn repr_factors(method: MethodId, n: i64, k: i64) -> (i64, Vec<GammaFactor>, Elem) {
    use GammaFactor::{Gamma as G, RecipGamma as RG};
    let ku = k as u32;
    match method {
        MethodId::A4 => (
            1,
            vec![G(arg(n + 1, 1, 0)), RG(arg(n + 1, 1, 1)), G(arg(k + n + 1, 1, 1)), RG(arg(k + 1, 1, 0))],
            Elem::HalfMinus(ku),
        ),
        MethodId::A5 => (
            sgn(n + k),
            vec![RG(arg(-n, -1, 0)), RG(arg(n + 1, 1, 1)), G(arg(-k, -1, 0)), G(arg(k + n + 1, 1, 1))],
            Elem::HalfMinus(ku),
        ),
        MethodId::A6 => (
            sgn(n),
            vec![G(arg(-n, -1, -1)), RG(arg(-n, -1, 0)), G(arg(-k, -1, 0)), RG(arg(-k - n, -1, -1))],
            Elem::HalfMinus(ku),
        ),
        MethodId::A7 => (
            sgn(n + k),
            vec![G(arg(n + 1, 0, 1)), RG(arg(n + 1, 1, 1)), G(arg(k + n + 1, 1, 1)), RG(arg(k + 1, 0, 1))],
            Elem::HalfPlus(ku),
        ),
        MethodId::A8 => (
            1,
            vec![RG(arg(-n, 0, -1)), RG(arg(n + 1, 1, 1)), G(arg(-k, 0, -1)), G(arg(k + n + 1, 1, 1))],
            Elem::HalfPlus(ku),
        ),
        MethodId::A9 => (
            sgn(k),
            vec![G(arg(-n, -1, -1)), RG(arg(-n, 0, -1)), G(arg(-k, 0, -1)), RG(arg(-k - n, -1, -1))],
            Elem::HalfPlus(ku),
        ),
        MethodId::A10 => (
            1,
            vec![G(arg(n + 1, 1, 0)), G(arg(n + 1, 0, 1)), RG(arg(k + 1, 1, 0)), RG(arg(n - k + 1, 0, 1))],
            Elem::Ratio(ku),
        ),
        MethodId::A11 => (
            sgn(k),
            vec![G(arg(n + 1, 1, 0)), RG(arg(-n, 0, -1)), G(arg(k - n, 0, -1)), RG(arg(k + 1, 1, 0))],
            Elem::Ratio(ku),
        ),
        MethodId::A12 => (
            sgn(n + k),
            vec![G(arg(n + 1, 0, 1)), RG(arg(-n, -1, 0)), G(arg(-k, -1, 0)), RG(arg(n - k + 1, 0, 1))],
            Elem::Ratio(ku),
        ),
        MethodId::A13 => (
            sgn(n),
            vec![RG(arg(-n, -1, 0)), RG(arg(-n, 0, -1)), G(arg(-k, -1, 0)), G(arg(k - n, 0, -1))],
            Elem::Ratio(ku),
        ),
        other => unreachable!("{other} is not a sum representation"),
    }
}

fn summand(method: MethodId, n: i64, k: i64) -> (GammaMonomial, Elem) {
    let (sign, factors, elem) = repr_factors(method, n, k);
    let coeff = rat(sign) / (fact_rat(k) * fact_rat(n - k));
    (GammaMonomial::new(coeff, factors), elem)
}

/// Representations of `P_n^{(α,β)}` as sums.
pub const POLY_METHODS: [MethodId; 10] = [
    MethodId::A4,
    MethodId::A5,
    MethodId::A6,
    MethodId::A7,
    MethodId::A8,
    MethodId::A9,
    MethodId::A10,
    MethodId::A11,
    MethodId::A12,
    MethodId::A13,
];

/// Representations of `∂P_n^{(α,β)}/∂β` at general parameters.
pub const DBETA_METHODS: [MethodId; 14] = [
    MethodId::A15,
    MethodId::A16,
    MethodId::A17,
    MethodId::A18,
    MethodId::A19,
    MethodId::A20,
    MethodId::A21,
    MethodId::A22,
    MethodId::A23,
    MethodId::A24,
    MethodId::A25,
    MethodId::A26,
    MethodId::A27,
    MethodId::A28,
];

fn natural_basis(method: MethodId, n: u32) -> Basis {
    use MethodId::*;
    match method {
        A4 | A5 | A6 | A16 | A17 | A18 => Basis::HalfMinus,
        A7 | A8 | A9 | A19 | A20 | A21 => Basis::HalfPlus,
        A10 | A11 | A12 | A13 | A22 | A23 | A24 | A25 => Basis::Ratio { lead: n },
        _ => Basis::Monomial,
    }
}

fn poly_terms(method: MethodId, n: u32) -> Vec<Term> {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            let (coeff, elem) = summand(method, n, k);
            Term { coeff, elem }
        })
        .collect()
}

fn psi(c: i64, a: i64, b: i64) -> GammaFactor {
    GammaFactor::Psi(arg(c, a, b))
}

fn dbeta_terms(method: MethodId, n: u32) -> Vec<Term> {
    use MethodId::*;
    let nn = n as i64;
    let pn = Elem::Jacobi(n);
    let psi_p = |sign: i64, f: GammaFactor| Term {
        coeff: GammaMonomial::new(rat(sign), vec![f]),
        elem: pn,
    };
    // summand of the underlying representation with extra ψ factors
    let sum = |base: MethodId, extra: &[(i64, fn(i64, i64) -> GammaFactor)]| -> Vec<Term> {
        (0..=nn)
            .flat_map(|k| {
                let (m, elem) = summand(base, nn, k);
                extra
                    .iter()
                    .map(move |(s, f)| Term {
                        coeff: GammaMonomial::new(&m.coeff * rat(*s), m.factors.clone()).with(f(nn, k)),
                        elem,
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let mut out = match method {
        A16 => vec![psi_p(-1, psi(nn + 1, 1, 1))],
        A17 => vec![psi_p(-1, psi(nn + 1, 1, 1))],
        A18 => vec![psi_p(-1, psi(-nn, -1, -1))],
        A19 => vec![psi_p(1, psi(nn + 1, 0, 1)), psi_p(-1, psi(nn + 1, 1, 1))],
        A20 => vec![psi_p(1, psi(-nn, 0, -1)), psi_p(-1, psi(nn + 1, 1, 1))],
        A21 => vec![psi_p(1, psi(-nn, 0, -1)), psi_p(-1, psi(-nn, -1, -1))],
        A22 | A24 => vec![psi_p(1, psi(nn + 1, 0, 1))],
        A23 | A25 => vec![psi_p(1, psi(-nn, 0, -1))],
        A26 | A27 => vec![psi_p(1, psi(2 * nn + 1, 1, 1)), psi_p(-1, psi(nn + 1, 1, 1))],
        A28 => vec![psi_p(1, psi(-2 * nn, -1, -1)), psi_p(-1, psi(-nn, -1, -1))],
        other => unreachable!("{other} has no term table"),
    };
    let upper: fn(i64, i64) -> GammaFactor = |n, k| psi(k + n + 1, 1, 1);
    let lower: fn(i64, i64) -> GammaFactor = |n, k| psi(-k - n, -1, -1);
    match method {
        A16 => out.extend(sum(A4, &[(1, upper)])),
        A17 => out.extend(sum(A5, &[(1, upper)])),
        A18 => out.extend(sum(A6, &[(1, lower)])),
        A19 => out.extend(sum(A7, &[(1, upper), (-1, |_, k| psi(k + 1, 0, 1))])),
        A20 => out.extend(sum(A8, &[(1, upper), (-1, |_, k| psi(-k, 0, -1))])),
        A21 => out.extend(sum(A9, &[(1, lower), (-1, |_, k| psi(-k, 0, -1))])),
        A22 => out.extend(sum(A10, &[(-1, |n, k| psi(n - k + 1, 0, 1))])),
        A23 => out.extend(sum(A11, &[(-1, |n, k| psi(k - n, 0, -1))])),
        A24 => out.extend(sum(A12, &[(-1, |n, k| psi(n - k + 1, 0, 1))])),
        A25 => out.extend(sum(A13, &[(-1, |n, k| psi(k - n, 0, -1))])),
        A26 | A27 | A28 => out.extend((0..nn).map(|k| expansion_term(method, nn, k))),
        _ => unreachable!(),
    }
    out
}

/// Coefficient of `P_k` in the expansion representations.
fn expansion_term(method: MethodId, n: i64, k: i64) -> Term {
    use GammaFactor::{Gamma as G, Linear, RecipGamma as RG, RecipLinear};
    let common = [Linear(arg(2 * k + 1, 1, 1)), RecipLinear(arg(k + n + 1, 1, 1))];
    let (sign, factors) = match method {
        MethodId::A26 => (
            sgn(n + k),
            vec![G(arg(n + 1, 1, 0)), RG(arg(n + 1, 1, 1)), G(arg(k + 1, 1, 1)), RG(arg(k + 1, 1, 0))],
        ),
        MethodId::A27 => (
            1,
            vec![RG(arg(-n, -1, 0)), RG(arg(n + 1, 1, 1)), G(arg(-k, -1, 0)), G(arg(k + 1, 1, 1))],
        ),
        MethodId::A28 => (
            sgn(n + k),
            vec![G(arg(-n, -1, -1)), RG(arg(-n, -1, 0)), G(arg(-k, -1, 0)), RG(arg(-k, -1, -1))],
        ),
        other => unreachable!("{other} is not an expansion"),
    };
    let mut all = common.to_vec();
    all.extend(factors);
    Term {
        coeff: GammaMonomial::new(frac(sign, n - k), all),
        elem: Elem::Jacobi(k as u32),
    }
}

static RODRIGUES: Lazy<Memo<JacobiParams, Poly>> = Lazy::new(Memo::new);

/// Polynomial part of a log-free, prefactor-free form.
fn as_poly(form: &CanonicalForm) -> Option<Poly> {
    let r = form.rational();
    (form.parity() == 0 && !form.has_logs() && !form.has_i_pi() && r.is_polynomial()).then(|| r.num().clone())
}

/// Rodrigues-type definition, expanded by the Leibniz rule.
pub fn rodrigues(p: JacobiParams) -> Poly {
    RODRIGUES
        .get_or_try(&p, || -> Result<Poly> {
            let n = p.n as i64;
            let norm = Rational::one() / (rat_big(num_bigint::BigInt::one() << p.n) * fact_rat(n));
            let form = leibniz(n + p.alpha, n + p.beta, LogFactor::One, p.n)
                .mul_ratfn(&RatFn::monomial(GammaLinear::one(), -p.alpha, -p.beta))
                .scale_rat(&norm);
            Ok(as_poly(&form).expect("Rodrigues formula yields a polynomial"))
        })
        .expect("infallible")
}

/// Rodrigues-type form of `∂P/∂β`, differentiated exactly under the log.
fn rodrigues_dbeta(p: JacobiParams) -> Poly {
    let n = p.n as i64;
    let norm = Rational::one() / (rat_big(num_bigint::BigInt::one() << p.n) * fact_rat(n));
    let deriv = leibniz(n + p.alpha, n + p.beta, LogFactor::HalfPlus, p.n)
        .mul_ratfn(&RatFn::monomial(GammaLinear::one(), -p.alpha, -p.beta))
        .scale_rat(&norm);
    let p_log = CanonicalForm::from_poly(rodrigues(p)).mul(&CanonicalForm::log_half_plus());
    as_poly(&(&deriv - &p_log)).expect("logarithms cancel in the parameter derivative")
}

fn elem_poly(elem: Elem, p: JacobiParams) -> Poly {
    match elem {
        Elem::HalfMinus(k) => half_power(-1, k),
        Elem::HalfPlus(k) => half_power(1, k),
        Elem::Ratio(k) => half_product(k, p.n - k),
        Elem::Jacobi(k) => rodrigues(JacobiParams::new(k, p.alpha, p.beta)),
    }
}

fn singular(method: MethodId, p: JacobiParams, e: SingularError) -> Error {
    Error::invalid(method, format!("{e} at {p}"))
}

/// Evaluates a term table at integer parameters.
fn sum_terms(method: MethodId, p: JacobiParams, terms: &[Term]) -> Result<(Poly, Vec<(Elem, GammaLinear)>)> {
    let mut total = Poly::new(vec![]);
    let mut coeffs = Vec::with_capacity(terms.len());
    for t in terms {
        let c = t.coeff.limit(p.alpha, p.beta).map_err(|e| singular(method, p, e))?;
        if !c.is_zero() {
            total = total.add(&elem_poly(t.elem, p).scale(&c));
        }
        coeffs.push((t.elem, c));
    }
    Ok((total, coeffs))
}

fn poly_method_valid(p: JacobiParams, method: MethodId) -> bool {
    poly_terms(method, p.n).iter().all(|t| t.coeff.limit(p.alpha, p.beta).is_ok())
}

/// `P_n^{(α,β)}(z)` at integer parameters by the chosen representation.
pub fn jacobi_poly(p: JacobiParams, method: MethodChoice) -> Result<JacobiPoly> {
    let method = match method {
        MethodChoice::Auto => POLY_METHODS
            .into_iter()
            .find(|&m| poly_method_valid(p, m))
            .unwrap_or(MethodId::A1),
        MethodChoice::One(m) => m,
    };
    let poly = match method {
        MethodId::A1 => rodrigues(p),
        m if POLY_METHODS.contains(&m) => sum_terms(m, p, &poly_terms(m, p.n))?.0,
        other => return Err(Error::invalid(other, "not a Jacobi polynomial representation")),
    };
    Ok(JacobiPoly {
        poly: PolyCF::from_poly(&poly, natural_basis(method, p.n)).expect("degree bounded by n"),
        degree_degenerate: p.degree_degenerate(),
    })
}

/// `P_n^{(β,α)}(-z) = (-1)^n P_n^{(α,β)}(z)`, exactly and at `z`.
pub fn jacobi_parity(p: JacobiParams, z: Complex64) -> IdentityCheck {
    let lhs = rodrigues(p.swapped()).reflect();
    let rhs = rodrigues(p).scale_rat(&rat(sgn(p.n as i64)));
    IdentityCheck::new(lhs.eval(z), rhs.eval(z), Some(lhs == rhs))
}

/// `∂P_n^{(α,β)}/∂β` at integer parameters by the chosen representation.
pub fn jacobi_dbeta_general(p: JacobiParams, method: MethodId) -> Result<BetaDerivative> {
    if !DBETA_METHODS.contains(&method) {
        return Err(Error::invalid(method, "not a parameter-derivative representation"));
    }
    if method == MethodId::A15 {
        return Ok(BetaDerivative {
            poly: PolyCF::from_poly(&rodrigues_dbeta(p), Basis::Monomial).expect("monomial basis"),
            expansion: None,
        });
    }
    let (poly, coeffs) = sum_terms(method, p, &dbeta_terms(method, p.n))?;
    let expansion = matches!(method, MethodId::A26 | MethodId::A27 | MethodId::A28).then(|| {
        let mut c = vec![GammaLinear::zero(); p.n as usize + 1];
        for (elem, v) in coeffs {
            if let Elem::Jacobi(k) = elem {
                c[k as usize] += &v;
            }
        }
        c
    });
    Ok(BetaDerivative {
        poly: PolyCF::from_poly(&poly, natural_basis(method, p.n)).expect("degree bounded by n"),
        expansion,
    })
}

fn falling_f64(x: f64, k: u32) -> f64 {
    (0..k).map(|j| x - j as f64).product()
}

fn binom_f64(n: u32, k: u32) -> f64 {
    binomial(n as i64, k as i64).to_f64().unwrap_or(f64::NAN)
}

/// `P_n^{(α,β)}(z)` for real parameters from the Rodrigues definition.
pub fn jacobi_f64(n: u32, alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let nf = n as f64;
    let (zm, zp) = (z - 1.0, z + 1.0);
    let sum: Complex64 = (0..=n)
        .map(|l| {
            binom_f64(n, l)
                * falling_f64(nf + alpha, l)
                * falling_f64(nf + beta, n - l)
                * zm.powu(n - l)
                * zp.powu(l)
        })
        .sum();
    sum / (2f64.powi(n as i32) * crate::exactnum::rat_to_f64(&fact_rat(n as i64)))
}

fn elem_f64(elem: Elem, n: u32, alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let (a, b) = ((z - 1.0) / 2.0, (z + 1.0) / 2.0);
    match elem {
        Elem::HalfMinus(k) => a.powu(k),
        Elem::HalfPlus(k) => b.powu(k),
        Elem::Ratio(k) => a.powu(k) * b.powu(n - k),
        Elem::Jacobi(k) => jacobi_f64(k, alpha, beta, z),
    }
}

fn sum_terms_f64(method: MethodId, n: u32, alpha: f64, beta: f64, z: Complex64, terms: &[Term]) -> Result<Complex64> {
    let mut total = Complex64::zero();
    for t in terms {
        let c = t.coeff.eval_f64(alpha, beta);
        if !c.is_finite() {
            return Err(Error::invalid(method, format!("pole at α={alpha}, β={beta}")));
        }
        if c != 0.0 {
            total += c * elem_f64(t.elem, n, alpha, beta, z);
        }
    }
    Ok(total)
}

/// Integer parameters, where the float coefficients need their limits.
fn integer_params(n: u32, alpha: f64, beta: f64) -> Option<JacobiParams> {
    let int = |v: f64| (v.fract() == 0.0 && v.abs() < 1e9).then_some(v as i64);
    Some(JacobiParams::new(n, int(alpha)?, int(beta)?))
}

/// `P_n^{(α,β)}(z)` for real parameters by the chosen representation.
/// Integer parameters go through the exact limits.
pub fn jacobi_repr_f64(n: u32, alpha: f64, beta: f64, z: Complex64, method: MethodId) -> Result<Complex64> {
    if let Some(p) = integer_params(n, alpha, beta) {
        if method != MethodId::A1 {
            return Ok(jacobi_poly(p, MethodChoice::One(method))?.poly.eval(z));
        }
    }
    match method {
        MethodId::A1 => Ok(jacobi_f64(n, alpha, beta, z)),
        m if POLY_METHODS.contains(&m) => sum_terms_f64(m, n, alpha, beta, z, &poly_terms(m, n)),
        other => Err(Error::invalid(other, "not a Jacobi polynomial representation")),
    }
}

/// `∂P_n^{(α,β)}(z)/∂β` for real parameters by the chosen representation.
/// Integer parameters go through the exact limits.
pub fn jacobi_dbeta_f64(n: u32, alpha: f64, beta: f64, z: Complex64, method: MethodId) -> Result<Complex64> {
    if let Some(p) = integer_params(n, alpha, beta) {
        if method != MethodId::A15 && DBETA_METHODS.contains(&method) {
            return Ok(jacobi_dbeta_general(p, method)?.poly.eval(z));
        }
    }
    match method {
        MethodId::A15 => {
            // the j = 0 Leibniz term cancels -P ln((z+1)/2); the rest is polynomial
            let nf = n as f64;
            let (zm, zp) = (z - 1.0, z + 1.0);
            let mut total = Complex64::zero();
            for j in 1..=n {
                let dlog = if j % 2 == 1 { 1.0 } else { -1.0 } * crate::exactnum::rat_to_f64(&fact_rat(j as i64 - 1));
                for l in 0..=(n - j) {
                    total += binom_f64(n, j)
                        * dlog
                        * binom_f64(n - j, l)
                        * falling_f64(nf + alpha, l)
                        * falling_f64(nf + beta, n - j - l)
                        * zm.powu(n - l)
                        * zp.powu(l);
                }
            }
            Ok(total / (2f64.powi(n as i32) * crate::exactnum::rat_to_f64(&fact_rat(n as i64))))
        }
        m if DBETA_METHODS.contains(&m) => sum_terms_f64(m, n, alpha, beta, z, &dbeta_terms(m, n)),
        other => Err(Error::invalid(other, "not a parameter-derivative representation")),
    }
}

/// Parameter families whose `β`-derivatives the Legendre formulas consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    /// `P_n^{(m,β)}` at `β = -m`.
    PlusMinus,
    /// `P_n^{(-m,β)}` at `β = m`.
    MinusPlus,
    /// `P_{n-m}^{(m,β)}` at `β = m`, `m <= n`.
    PlusPlus,
    /// `P_{n+m}^{(-m,β)}` at `β = -m`.
    MinusMinusHigh,
    /// `P_{m-n-1}^{(-m,β)}` at `β = -m`, `m > n`.
    MinusMinusLow,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 5] = [
        SpecialCase::PlusMinus,
        SpecialCase::MinusPlus,
        SpecialCase::PlusPlus,
        SpecialCase::MinusMinusHigh,
        SpecialCase::MinusMinusLow,
    ];

    /// Jacobi parameters of the family, if `(n, m)` is admissible.
    pub fn params(self, n: u32, m: u32) -> Result<JacobiParams> {
        let (ni, mi) = (n as i64, m as i64);
        match self {
            SpecialCase::PlusMinus => Ok(JacobiParams::new(n, mi, -mi)),
            SpecialCase::MinusPlus => Ok(JacobiParams::new(n, -mi, mi)),
            SpecialCase::PlusPlus if m <= n => Ok(JacobiParams::new(n - m, mi, mi)),
            SpecialCase::MinusMinusHigh => Ok(JacobiParams::new(n + m, -mi, -mi)),
            SpecialCase::MinusMinusLow if m > n => Ok(JacobiParams::new((mi - ni - 1) as u32, -mi, -mi)),
            _ => Err(Error::ConstraintViolation(format!("{self:?} is undefined for n={n}, m={m}"))),
        }
    }

    pub fn methods(self) -> &'static [MethodId] {
        use MethodId::*;
        match self {
            SpecialCase::PlusMinus => &[A29, A30, A31, A32, A33, A34, A35],
            SpecialCase::MinusPlus => &[A36, A37, A38, A39, A40, A41, A42, A43],
            SpecialCase::PlusPlus => &[A44, A45, A46, A47],
            SpecialCase::MinusMinusHigh => &[A48, A49, A50, A51],
            SpecialCase::MinusMinusLow => &[A52, A53, A54, A55, A56],
        }
    }

    /// Methods whose order constraint admits `(n, m)`.
    pub fn valid_methods(self, n: u32, m: u32) -> Vec<MethodId> {
        self.methods()
            .iter()
            .copied()
            .filter(|&meth| special_constraint(meth, n, m).is_ok())
            .collect()
    }
}

fn special_constraint(method: MethodId, n: u32, m: u32) -> Result<()> {
    use MethodId::*;
    let ok = match method {
        A31 | A33 | A37 | A40 | A42 | A44 | A45 | A46 | A47 | A49 | A50 | A51 => m <= n,
        A32 | A34 | A38 | A41 | A43 | A52 | A53 | A54 | A55 | A56 => m > n,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ConstraintViolation(format!("{method} does not admit n={n}, m={m}")))
    }
}

/// Accumulates a polynomial from factorial-and-ψ coefficients.
struct Builder {
    params: JacobiParams,
    acc: Poly,
}

impl Builder {
    fn new(params: JacobiParams) -> Self {
        Self {
            params,
            acc: Poly::new(vec![]),
        }
    }

    /// Adds `c · ((z-1)/2)^i ((z+1)/2)^j`.
    fn ab(&mut self, c: GammaLinear, i: i64, j: i64) {
        self.acc = self.acc.add(&half_product(i as u32, j as u32).scale(&c));
    }

    /// Adds `c · P_k` with the family's parameters.
    fn jacobi(&mut self, c: GammaLinear, k: i64) {
        let p = JacobiParams::new(k as u32, self.params.alpha, self.params.beta);
        self.acc = self.acc.add(&rodrigues(p).scale(&c));
    }

    /// Adds `c · P_deg`, the polynomial being differentiated.
    fn own(&mut self, c: GammaLinear) {
        let k = self.params.n as i64;
        self.jacobi(c, k);
    }
}

fn ps(x: i64) -> GammaLinear {
    digamma_int(x).expect("digamma argument positive in admissible range")
}

fn gl(r: Rational) -> GammaLinear {
    GammaLinear::from_rational(r)
}

fn f(k: i64) -> Rational {
    fact_rat(k)
}

/// `∂P/∂β` for one of the special parameter families, formula by formula.
pub fn jacobi_dbeta_special(case: SpecialCase, n: u32, m: u32, method: MethodId) -> Result<PolyCF> {
    if !case.methods().contains(&method) {
        return Err(Error::invalid(method, format!("not a formula for {case:?}")));
    }
    special_constraint(method, n, m)?;
    let params = case.params(n, m)?;
    let (n, m) = (n as i64, m as i64);
    let mut b = Builder::new(params);
    use MethodId::*;
    match method {
        A29 | A36 | A44 | A48 | A52 => {
            let poly = rodrigues_dbeta(params);
            return Ok(PolyCF::from_poly(&poly, Basis::Monomial).expect("monomial basis"));
        }
        A30 => {
            b.own(-ps(n + 1));
            for k in 0..=n {
                let c = f(n + m) / f(n) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                b.ab(ps(k + n + 1).scale(&c), k, 0);
            }
        }
        A31 => {
            b.own(-(&ps(n + 1) - &ps(n - m + 1)));
            let pre = rat(sgn(n + m)) * f(n - m) / f(n);
            for k in 0..m {
                b.ab(gl(-&pre * f(k + n) * f(m - k - 1) / (f(k) * f(n - k))), 0, k);
            }
            for k in 0..=(n - m) {
                let c = &pre * rat(sgn(k)) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                b.ab((&ps(k + n + m + 1) - &ps(k + 1)).scale(&c), 0, k + m);
            }
        }
        A32 => {
            b.own(&ps(m - n) - &ps(n + 1));
            for k in 0..=n {
                let c = f(k + n) * f(m - k - 1) / (f(n) * f(m - n - 1) * f(k) * f(n - k));
                b.ab((&ps(k + n + 1) - &ps(m - k)).scale(&c), 0, k);
            }
        }
        A33 => {
            b.own(ps(n - m + 1));
            let pre = f(n - m) * f(n + m);
            for k in 0..=(n - m) {
                let c = -&pre / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                b.ab(ps(n - m - k + 1).scale(&c), k, n - k);
            }
            for k in 1..=m {
                let c = -&pre * rat(sgn(k)) * f(k - 1) / (f(k + n) * f(k + n - m) * f(m - k));
                b.ab(gl(c), n - m + k, m - k);
            }
        }
        A34 => {
            b.own(ps(m - n));
            for k in 0..=n {
                let c = -f(n + m) / f(m - n - 1) * rat(sgn(k)) * f(k + m - n - 1) / (f(k) * f(k + m) * f(n - k));
                b.ab(ps(k + m - n).scale(&c), k, n - k);
            }
        }
        A35 => {
            b.own(&ps(2 * n + 1) - &ps(n + 1));
            for k in 0..n {
                let c = rat(sgn(n + k)) * f(n + m) / f(n) * frac(2 * k + 1, (n - k) * (k + n + 1)) * f(k) / f(k + m);
                b.jacobi(gl(c), k);
            }
        }
        A37 => {
            b.own(-ps(n + 1));
            for k in 0..=(n - m) {
                let c = f(n - m) / f(n) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                b.ab(ps(k + n + m + 1).scale(&c), k + m, 0);
            }
        }
        A38 => {
            b.own(-ps(n + 1));
            for k in 0..=n {
                let c = rat(sgn(n + k)) * f(k + n) * f(m - k - 1) / (f(n) * f(m - n - 1) * f(k) * f(n - k));
                b.ab(ps(k + n + 1).scale(&c), k, 0);
            }
        }
        A39 => {
            b.own(&ps(n + m + 1) - &ps(n + 1));
            for k in 0..=n {
                let c = rat(sgn(n + k)) * f(n + m) / f(n) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                b.ab((&ps(k + n + 1) - &ps(k + m + 1)).scale(&c), 0, k);
            }
        }
        A40 => {
            b.own(ps(n + m + 1));
            for k in 0..=(n - m) {
                let c = -f(n - m) * f(n + m) / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                b.ab(ps(n - k + 1).scale(&c), m + k, n - m - k);
            }
        }
        A41 => {
            b.own(ps(n + m + 1));
            for k in 0..=n {
                let c = -rat(sgn(n + k)) * f(n + m) / f(m - n - 1) * f(m - k - 1) / (f(k) * f(n - k) * f(n + m - k));
                b.ab(ps(n + m - k + 1).scale(&c), k, n - k);
            }
        }
        A42 => {
            b.own(&ps(2 * n + 1) - &ps(n + 1));
            for k in 0..(n - m) {
                let c = rat(sgn(n + m + k)) * f(n - m) / f(n) * frac(2 * k + 2 * m + 1, (n - m - k) * (k + n + m + 1))
                    * f(k + m)
                    / f(k);
                b.jacobi(gl(c), k + m);
            }
        }
        A43 => {
            b.own(&ps(2 * n + 1) - &ps(n + 1));
            for k in 0..n {
                let c = frac(2 * k + 1, (n - k) * (k + n + 1)) * f(k) * f(m - k - 1) / (f(n) * f(m - n - 1));
                b.jacobi(gl(c), k);
            }
        }
        A45 => {
            b.own(-ps(n + m + 1));
            for k in 0..=(n - m) {
                let c = f(n) / f(n + m) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                b.ab(ps(k + n + m + 1).scale(&c), k, 0);
            }
        }
        A46 => {
            b.own(-(&ps(n + m + 1) - &ps(n + 1)));
            for k in 0..=(n - m) {
                let c = rat(sgn(n + m + k)) * f(n) / f(n + m) * f(k + n + m) / (f(k) * f(k + m) * f(n - m - k));
                b.ab((&ps(k + n + m + 1) - &ps(k + m + 1)).scale(&c), 0, k);
            }
        }
        A47 => {
            b.own(ps(n + 1));
            for k in 0..=(n - m) {
                let c = -f(n) * f(n) / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                b.ab(ps(n - k + 1).scale(&c), k, n - m - k);
            }
        }
        A49 => {
            b.own(-ps(n - m + 1));
            for k in 0..=n {
                let c = f(n) / f(n - m) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                b.ab(ps(k + n + 1).scale(&c), k + m, 0);
            }
        }
        A50 => {
            b.own(&ps(n + 1) - &ps(n - m + 1));
            let pre = rat(sgn(n)) * f(n) / f(n - m);
            for k in 0..m {
                b.ab(gl(-&pre * f(k + n - m) * f(m - k - 1) / (f(k) * f(n + m - k))), 0, k);
            }
            for k in 0..=n {
                let c = &pre * rat(sgn(k)) * f(k + n) / (f(k) * f(k + m) * f(n - k));
                b.ab((&ps(k + n + 1) - &ps(k + 1)).scale(&c), 0, k + m);
            }
        }
        A51 => {
            b.own(ps(n + 1));
            let pre = f(n) * f(n);
            for k in 0..=(n - m) {
                let c = -&pre / (f(k) * f(k + m) * f(n - k) * f(n - m - k));
                b.ab(ps(n - m - k + 1).scale(&c), m + k, n - k);
            }
            for k in 1..=m {
                let c = -&pre * rat(sgn(k)) * f(k - 1) / (f(k + n) * f(k + n - m) * f(m - k));
                b.ab(gl(c), n + k, m - k);
            }
        }
        A53 => {
            b.own(-ps(n + m + 1));
            for k in 0..=(m - n - 1) {
                let c = -rat(sgn(n + m)) * f(n + m) / f(n) * f(m - k - 1) / (f(k) * f(n + m - k) * f(m - n - k - 1));
                b.ab(ps(n + m - k + 1).scale(&c), k, 0);
            }
        }
        A54 => {
            b.own(-(&ps(n + m + 1) - &ps(n + 1)));
            for k in 0..=(m - n - 1) {
                let c = rat(sgn(k)) * f(n + m) / f(n) * f(m - k - 1) / (f(k) * f(n + m - k) * f(m - n - k - 1));
                b.ab((&ps(n + m - k + 1) - &ps(m - k)).scale(&c), 0, k);
            }
        }
        A55 => {
            b.own(ps(n + 1));
            for k in 0..=(m - n - 1) {
                let c = rat(sgn(n + m)) / (f(n) * f(n)) * f(k + n) * f(m - k - 1) / (f(k) * f(m - n - k - 1));
                b.ab(ps(k + n + 1).scale(&c), k, m - n - 1 - k);
            }
        }
        A56 => {
            b.own(-(&ps(n + m + 1) - &ps(2 * n + 2)));
            for k in 0..=(m - n - 2) {
                let c = -rat(sgn(n + m + k)) * f(n + m) / f(n)
                    * frac(2 * m - 2 * k - 1, (n + m - k) * (m - n - k - 1))
                    * f(m - k - 1)
                    / f(2 * m - k - 1);
                b.jacobi(gl(c), k);
            }
        }
        other => unreachable!("{other} handled above or rejected"),
    }
    let basis = match method {
        A30 | A37 | A38 | A45 | A49 | A53 => Basis::HalfMinus,
        A31 | A32 | A39 | A46 | A50 | A54 => Basis::HalfPlus,
        _ => Basis::Monomial,
    };
    Ok(PolyCF::from_poly(&b.acc, basis).expect("non-ratio basis"))
}

/// Identities expressing `P_n^{±m}` through Jacobi polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// `P_n^m` through `P_n^{(-m,m)}`, `m <= n`.
    PlusViaMinusPlus,
    /// `P_n^{-m}(-z)` through `P_n^{(-m,m)}`.
    MinusReflectedViaMinusPlus,
    /// `P_n^m` through `P_n^{(m,-m)}`, `m <= n`.
    PlusViaPlusMinus,
    /// `P_n^{-m}` through `P_n^{(m,-m)}`.
    MinusViaPlusMinus,
    /// `P_n^m` through `P_{n+m}^{(-m,-m)}`, `m <= n`.
    PlusViaMinusMinus,
    /// `P_n^m` through `P_{n-m}^{(m,m)}`, `m <= n`.
    PlusViaPlusPlus,
    /// `P_n^{-m}(z) - (-1)^n P_n^{-m}(-z)` through `P_{m-n-1}^{(-m,-m)}`, `m > n`.
    DefectViaMinusMinus,
}

impl LinkKind {
    pub const ALL: [LinkKind; 7] = [
        LinkKind::PlusViaMinusPlus,
        LinkKind::MinusReflectedViaMinusPlus,
        LinkKind::PlusViaPlusMinus,
        LinkKind::MinusViaPlusMinus,
        LinkKind::PlusViaMinusMinus,
        LinkKind::PlusViaPlusPlus,
        LinkKind::DefectViaMinusMinus,
    ];

    pub fn admits(self, n: u32, m: u32) -> bool {
        match self {
            LinkKind::MinusReflectedViaMinusPlus | LinkKind::MinusViaPlusMinus => true,
            LinkKind::DefectViaMinusMinus => m > n,
            _ => m <= n,
        }
    }
}

/// Both sides of a Legendre-Jacobi identity, exactly and at `z`.
pub fn legendre_jacobi_link(kind: LinkKind, n: u32, m: u32, z: &CutPoint, real_side: Side) -> Result<IdentityCheck> {
    if !kind.admits(n, m) {
        return Err(Error::ConstraintViolation(format!("{kind:?} does not admit n={n}, m={m}")));
    }
    let point = EvalPoint::from_cut(z, real_side);
    let (ni, mi) = (n as i64, m as i64);
    let jac = |deg: i64, a: i64, b: i64| CanonicalForm::from_poly(rodrigues(JacobiParams::new(deg as u32, a, b)));
    let two_m = rat_big(num_bigint::BigInt::one() << m);
    let (lhs, rhs) = match kind {
        LinkKind::PlusViaMinusPlus => (
            p_default(OrderSpec::plus(n, m)),
            jac(ni, -mi, mi).mul_ratio_half_power(mi).scale_rat(&(f(ni) / f(ni - mi))),
        ),
        LinkKind::MinusReflectedViaMinusPlus => (
            p_default(OrderSpec::minus(n, m)).reflect(point.side),
            jac(ni, -mi, mi)
                .mul_ratio_half_power(mi)
                .scale_rat(&(rat(sgn(ni)) * f(ni) / f(ni + mi))),
        ),
        LinkKind::PlusViaPlusMinus => (
            p_default(OrderSpec::plus(n, m)),
            jac(ni, mi, -mi).mul_ratio_half_power(-mi).scale_rat(&(f(ni) / f(ni - mi))),
        ),
        LinkKind::MinusViaPlusMinus => (
            p_default(OrderSpec::minus(n, m)),
            jac(ni, mi, -mi).mul_ratio_half_power(-mi).scale_rat(&(f(ni) / f(ni + mi))),
        ),
        LinkKind::PlusViaMinusMinus => (
            p_default(OrderSpec::plus(n, m)),
            jac(ni + mi, -mi, -mi)
                .mul_z2m1_half_power(-mi)
                .scale_rat(&(f(ni + mi) / f(ni) * &two_m)),
        ),
        LinkKind::PlusViaPlusPlus => (
            p_default(OrderSpec::plus(n, m)),
            jac(ni - mi, mi, mi)
                .mul_z2m1_half_power(mi)
                .scale_rat(&(f(ni + mi) / f(ni) / &two_m)),
        ),
        LinkKind::DefectViaMinusMinus => {
            let p = p_default(OrderSpec::minus(n, m));
            let reflected = p.reflect(point.side).scale_rat(&rat(sgn(ni)));
            (
                &p - &reflected,
                jac(mi - ni - 1, -mi, -mi)
                    .mul_z2m1_half_power(-mi)
                    .scale_rat(&(rat(sgn(mi)) * f(ni) / f(ni + mi) * &two_m)),
            )
        }
    };
    Ok(IdentityCheck::new(lhs.eval(&point), rhs.eval(&point), Some(lhs == rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn degree_one_closed_form() {
        for (a, b) in [(0, 0), (2, -1), (-3, 4), (-2, -2)] {
            let p = jacobi_poly(JacobiParams::new(1, a, b), MethodChoice::One(MethodId::A1)).unwrap();
            let expected = PolyCF::new(
                Basis::HalfMinus,
                vec![GammaLinear::from_int(a + 1), GammaLinear::from_int(a + b + 2)],
            );
            assert_eq!(p.poly.in_basis(Basis::HalfMinus).unwrap(), expected, "α={a} β={b}");
        }
    }

    #[test]
    fn ratio_and_half_bases_agree() {
        let p = JacobiParams::new(2, 1, -1);
        let a4 = jacobi_poly(p, MethodChoice::One(MethodId::A4)).unwrap().poly;
        let a10 = jacobi_poly(p, MethodChoice::One(MethodId::A10)).unwrap().poly;
        assert_eq!(a4.to_poly(), a10.to_poly());
        assert_eq!(a10.in_basis(Basis::HalfMinus).unwrap(), a4);
    }

    #[test]
    fn degenerate_parameters_are_flagged() {
        // n + α + β + 1 <= 0 < 2n + α + β + 1
        assert!(JacobiParams::new(2, -2, -2).degree_degenerate());
        assert!(!JacobiParams::new(2, 1, -1).degree_degenerate());
    }

    #[test]
    fn real_parameter_paths_agree() {
        let z = Complex64::new(0.3, 0.7);
        for method in POLY_METHODS {
            let v = jacobi_repr_f64(3, 0.37, -0.61, z, method).unwrap();
            let r = jacobi_f64(3, 0.37, -0.61, z);
            assert!((v - r).norm() < 1e-12 * r.norm().max(1.0), "{method}");
        }
    }

    #[test]
    fn dbeta_degree_one() {
        for method in DBETA_METHODS {
            let v = jacobi_dbeta_f64(1, 0.3, 0.45, c(2.5), method).unwrap();
            assert!((v - c(0.75)).norm() < 1e-12, "{method}: {v}");
        }
    }

    #[test]
    fn special_formula_examples() {
        let a30 = jacobi_dbeta_special(SpecialCase::PlusMinus, 0, 0, MethodId::A30).unwrap();
        assert!(a30.is_zero());
        let a53 = jacobi_dbeta_special(SpecialCase::MinusMinusLow, 0, 1, MethodId::A53).unwrap();
        assert!(a53.is_zero());
        let a35 = jacobi_dbeta_special(SpecialCase::PlusMinus, 1, 1, MethodId::A35).unwrap();
        let expected = rodrigues(JacobiParams::new(1, 1, -1))
            .scale_rat(&frac(1, 2))
            .sub(&rodrigues(JacobiParams::new(0, 1, -1)));
        assert_eq!(a35.to_poly(), expected);
    }
}
