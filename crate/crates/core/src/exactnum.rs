//! Exact arithmetic substrate: big rationals, factorials, harmonic numbers and
//! the digamma function at integers carried symbolically in Euler's constant.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact reduced fraction with a positive denominator.
pub type Rational = BigRational;

/// Euler-Mascheroni constant in double precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("digamma has a pole at non-positive integer {0}")]
    DigammaPole(i64),
    #[error("gamma ratio Gamma({a})/Gamma({b}) is infinite")]
    InfiniteRatio { a: i64, b: i64 },
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
}

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact fraction `num / den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Big integer as an exact rational.
pub fn rat_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Nearest double to an exact rational.
pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `n!` for `n >= 0`.
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!` as a rational, rejecting negative `n`.
pub fn factorial_rat(n: i64) -> Result<Rational, ExactError> {
    if n < 0 {
        return Err(ExactError::NegativeFactorial(n));
    }
    Ok(rat_big(factorial(n as u32)))
}

/// Binomial coefficient `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)` for integer `x`, any sign.
pub fn falling(x: i64, k: u32) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, j| acc * (x - j))
}

/// Harmonic number `H_n`, with `H_0 = 0`.
pub fn harmonic(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::zero(), |acc, j| acc + frac(1, j))
}

/// Value `const_part + gamma_coeff * γ` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaLinear {
    pub const_part: Rational,
    pub gamma_coeff: Rational,
}

impl GammaLinear {
    pub fn new(const_part: Rational, gamma_coeff: Rational) -> Self {
        Self {
            const_part,
            gamma_coeff,
        }
    }

    /// A purely rational value.
    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// Euler's constant itself.
    pub fn gamma() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.gamma_coeff.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.const_part * r, &self.gamma_coeff * r)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.const_part) + rat_to_f64(&self.gamma_coeff) * EULER_GAMMA
    }
}

impl Zero for GammaLinear {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.const_part.is_zero() && self.gamma_coeff.is_zero()
    }
}

impl One for GammaLinear {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for GammaLinear {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for GammaLinear {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.const_part + rhs.const_part,
            self.gamma_coeff + rhs.gamma_coeff,
        )
    }
}

impl<'a> Add<&'a GammaLinear> for &'a GammaLinear {
    type Output = GammaLinear;
    fn add(self, rhs: Self) -> GammaLinear {
        GammaLinear::new(
            &self.const_part + &rhs.const_part,
            &self.gamma_coeff + &rhs.gamma_coeff,
        )
    }
}

impl AddAssign<&GammaLinear> for GammaLinear {
    fn add_assign(&mut self, rhs: &GammaLinear) {
        self.const_part += &rhs.const_part;
        self.gamma_coeff += &rhs.gamma_coeff;
    }
}

impl Sub for GammaLinear {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.const_part - rhs.const_part,
            self.gamma_coeff - rhs.gamma_coeff,
        )
    }
}

impl<'a> Sub<&'a GammaLinear> for &'a GammaLinear {
    type Output = GammaLinear;
    fn sub(self, rhs: Self) -> GammaLinear {
        GammaLinear::new(
            &self.const_part - &rhs.const_part,
            &self.gamma_coeff - &rhs.gamma_coeff,
        )
    }
}

impl SubAssign<&GammaLinear> for GammaLinear {
    fn sub_assign(&mut self, rhs: &GammaLinear) {
        self.const_part -= &rhs.const_part;
        self.gamma_coeff -= &rhs.gamma_coeff;
    }
}

impl Neg for GammaLinear {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.const_part, -self.gamma_coeff)
    }
}

impl Mul<&Rational> for &GammaLinear {
    type Output = GammaLinear;
    fn mul(self, rhs: &Rational) -> GammaLinear {
        self.scale(rhs)
    }
}

/// Product of two values, at most one of which may carry γ.
///
/// # Panics
/// Panics if both factors have a non-zero γ coefficient, since γ² is not
/// representable. No formula in this crate multiplies two such values.
impl<'a> Mul<&'a GammaLinear> for &'a GammaLinear {
    type Output = GammaLinear;
    fn mul(self, rhs: Self) -> GammaLinear {
        assert!(
            self.is_rational() || rhs.is_rational(),
            "product of two gamma-dependent values"
        );
        GammaLinear::new(
            &self.const_part * &rhs.const_part,
            &self.const_part * &rhs.gamma_coeff + &self.gamma_coeff * &rhs.const_part,
        )
    }
}

impl Mul for GammaLinear {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for GammaLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.const_part.is_zero(), self.gamma_coeff.is_zero()) {
            (_, true) => write!(f, "{}", self.const_part),
            (true, false) => write!(f, "{}*gamma", self.gamma_coeff),
            (false, false) => write!(f, "({} + {}*gamma)", self.const_part, self.gamma_coeff),
        }
    }
}

/// `ψ(n) = H_{n-1} - γ` for `n >= 1`.
pub fn digamma_int(n: i64) -> Result<GammaLinear, ExactError> {
    if n <= 0 {
        return Err(ExactError::DigammaPole(n));
    }
    Ok(GammaLinear::new(harmonic((n - 1) as u32), -Rational::one()))
}

/// `ψ(a) - ψ(b)` for positive integers; always rational.
pub fn digamma_diff(a: i64, b: i64) -> Result<Rational, ExactError> {
    let d = digamma_int(a)? - digamma_int(b)?;
    debug_assert!(d.is_rational());
    Ok(d.const_part)
}

/// `lim ψ(ζ)/Γ(ζ)` as `ζ -> -k`, equal to `(-1)^(k+1) k!`.
pub fn psi_over_gamma_limit(k: u32) -> Rational {
    let f = rat_big(factorial(k));
    if k.is_multiple_of(2) {
        -f
    } else {
        f
    }
}

/// `Γ(a)/Γ(b)` for integers, taking the limit when both arguments are poles.
///
/// Returns zero when only the denominator sits on a pole.
pub fn gamma_ratio(a: i64, b: i64) -> Result<Rational, ExactError> {
    match (a > 0, b > 0) {
        (true, true) => {
            // (a-1)!/(b-1)! as a Pochhammer product
            if a >= b {
                Ok(rat_big(falling(a - 1, (a - b) as u32)))
            } else {
                Ok(Rational::one() / rat_big(falling(b - 1, (b - a) as u32)))
            }
        }
        (true, false) => Ok(Rational::zero()),
        (false, true) => Err(ExactError::InfiniteRatio { a, b }),
        (false, false) => {
            // Γ(-k+ε) ~ (-1)^k / (k! ε)
            let (ka, kb) = (-a, -b);
            let sign = if (ka - kb).rem_euclid(2) == 0 { 1 } else { -1 };
            let mag = gamma_ratio(kb + 1, ka + 1)?;
            Ok(mag * rat(sign))
        }
    }
}

/// `1/Γ(a)` at an integer, which vanishes at the poles.
pub fn recip_gamma_int(a: i64) -> Rational {
    if a <= 0 {
        Rational::zero()
    } else {
        Rational::one() / rat_big(factorial((a - 1) as u32))
    }
}

/// Argument `c + a·α + b·β` of a Γ, ψ or linear factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamArg {
    pub c: i64,
    pub a: i64,
    pub b: i64,
}

impl ParamArg {
    pub const fn new(c: i64, a: i64, b: i64) -> Self {
        Self { c, a, b }
    }

    pub fn at(&self, alpha: i64, beta: i64) -> i64 {
        self.c + self.a * alpha + self.b * beta
    }

    pub fn at_f64(&self, alpha: f64, beta: f64) -> f64 {
        self.c as f64 + self.a as f64 * alpha + self.b as f64 * beta
    }

    /// Direction of the argument in parameter space, scaled so the first
    /// non-zero entry is positive and the entries are coprime, with the scale.
    fn direction(&self) -> Option<((i64, i64), i64)> {
        let g = num_integer::gcd(self.a, self.b);
        if g == 0 {
            return None;
        }
        let lead = if self.a != 0 { self.a } else { self.b };
        let s = if lead > 0 { g } else { -g };
        Some(((self.a / s, self.b / s), s))
    }
}

/// One factor of a [`GammaMonomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaFactor {
    Gamma(ParamArg),
    RecipGamma(ParamArg),
    Psi(ParamArg),
    /// The argument itself as a multiplier.
    Linear(ParamArg),
    /// The reciprocal of the argument.
    RecipLinear(ParamArg),
}

/// Rational constant times a product of Γ, 1/Γ, ψ and linear factors whose
/// arguments depend linearly on two parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaMonomial {
    pub coeff: Rational,
    pub factors: Vec<GammaFactor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("uncancelled pole in a gamma/digamma product")]
    Divergent,
    #[error("limit of a gamma/digamma product depends on the approach direction")]
    DirectionDependent,
}

impl GammaMonomial {
    pub fn new(coeff: Rational, factors: Vec<GammaFactor>) -> Self {
        Self { coeff, factors }
    }

    pub fn with(mut self, f: GammaFactor) -> Self {
        self.factors.push(f);
        self
    }

    /// Limit at integer parameters, approached from generic nearby values.
    ///
    /// Each pole contributes its leading Laurent coefficient; poles along the
    /// same parameter direction in numerator and denominator cancel. Excess
    /// denominator poles give zero, excess numerator poles are an error.
    pub fn limit(&self, alpha: i64, beta: i64) -> Result<GammaLinear, SingularError> {
        use std::collections::HashMap;
        let mut value = GammaLinear::from_rational(self.coeff.clone());
        let mut order: HashMap<(i64, i64), i64> = HashMap::new();
        let mut hard_zero = false;
        let pole = |arg: &ParamArg| arg.direction().ok_or(SingularError::Divergent);
        for f in &self.factors {
            match f {
                GammaFactor::Gamma(arg) | GammaFactor::RecipGamma(arg) => {
                    let x = arg.at(alpha, beta);
                    let recip = matches!(f, GammaFactor::RecipGamma(_));
                    if x > 0 {
                        let g = rat_big(factorial((x - 1) as u32));
                        value = value.scale(&if recip { Rational::one() / g } else { g });
                    } else {
                        // Γ(-k + sℓ) ~ (-1)^k / (k! s ℓ)
                        let (dir, s) = pole(arg)?;
                        let k = -x;
                        let lead = rat(if k % 2 == 0 { 1 } else { -1 }) / (rat_big(factorial(k as u32)) * rat(s));
                        value = value.scale(&if recip { Rational::one() / lead } else { lead });
                        *order.entry(dir).or_default() += if recip { -1 } else { 1 };
                    }
                }
                GammaFactor::Psi(arg) => {
                    let x = arg.at(alpha, beta);
                    if x > 0 {
                        value = &value * &digamma_int(x).expect("positive argument");
                    } else {
                        // ψ(-k + sℓ) ~ -1 / (s ℓ)
                        let (dir, s) = pole(arg)?;
                        value = value.scale(&(rat(-1) / rat(s)));
                        *order.entry(dir).or_default() += 1;
                    }
                }
                GammaFactor::Linear(arg) | GammaFactor::RecipLinear(arg) => {
                    let x = arg.at(alpha, beta);
                    let recip = matches!(f, GammaFactor::RecipLinear(_));
                    if x != 0 {
                        value = value.scale(&if recip { frac(1, x) } else { rat(x) });
                    } else {
                        match arg.direction() {
                            None if recip => return Err(SingularError::Divergent),
                            None => hard_zero = true,
                            Some((dir, s)) => {
                                value = value.scale(&if recip { frac(1, s) } else { rat(s) });
                                *order.entry(dir).or_default() += if recip { 1 } else { -1 };
                            }
                        }
                    }
                }
            }
        }
        let excess_num = order.values().any(|&o| o > 0);
        let excess_den = order.values().any(|&o| o < 0);
        match (excess_num, excess_den || hard_zero) {
            (true, true) => Err(SingularError::DirectionDependent),
            (true, false) => Err(SingularError::Divergent),
            (false, true) => Ok(GammaLinear::zero()),
            (false, false) => Ok(value),
        }
    }

    /// Double-precision value at real parameters away from poles.
    pub fn eval_f64(&self, alpha: f64, beta: f64) -> f64 {
        use statrs::function::gamma::{digamma, gamma};
        self.factors.iter().fold(rat_to_f64(&self.coeff), |acc, f| {
            acc * match f {
                GammaFactor::Gamma(a) => gamma(a.at_f64(alpha, beta)),
                GammaFactor::RecipGamma(a) => recip_gamma_f64(a.at_f64(alpha, beta), gamma),
                GammaFactor::Psi(a) => digamma(a.at_f64(alpha, beta)),
                GammaFactor::Linear(a) => a.at_f64(alpha, beta),
                GammaFactor::RecipLinear(a) => 1.0 / a.at_f64(alpha, beta),
            }
        })
    }
}

fn recip_gamma_f64(x: f64, gamma: fn(f64) -> f64) -> f64 {
    if x <= 0.0 && x.fract() == 0.0 {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), rat(0));
        assert_eq!(harmonic(1), rat(1));
        assert_eq!(harmonic(3), frac(11, 6));
    }

    #[test]
    fn digamma_values() {
        assert_eq!(digamma_int(1).unwrap(), GammaLinear::new(rat(0), rat(-1)));
        assert_eq!(digamma_int(2).unwrap(), GammaLinear::new(rat(1), rat(-1)));
        assert_eq!(
            digamma_int(4).unwrap(),
            GammaLinear::new(frac(11, 6), rat(-1))
        );
        assert!(digamma_int(0).is_err());
        assert!(digamma_int(-3).is_err());
    }

    #[test]
    fn psi_gamma_limit_values() {
        assert_eq!(psi_over_gamma_limit(0), rat(-1));
        assert_eq!(psi_over_gamma_limit(1), rat(1));
        assert_eq!(psi_over_gamma_limit(3), rat(6));
        assert_eq!(psi_over_gamma_limit(4), rat(-24));
    }

    #[test]
    fn gamma_ratio_values() {
        assert_eq!(gamma_ratio(4, 2).unwrap(), rat(6));
        assert_eq!(gamma_ratio(-1, -3).unwrap(), rat(6));
        assert_eq!(gamma_ratio(2, -1).unwrap(), rat(0));
        assert!(matches!(
            gamma_ratio(-2, 3),
            Err(ExactError::InfiniteRatio { .. })
        ));
    }

    #[test]
    fn binomial_and_falling() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(falling(-2, 3), BigInt::from(-24));
        assert_eq!(falling(5, 0), BigInt::from(1));
    }

    #[test]
    fn gamma_linear_arithmetic() {
        let a = GammaLinear::new(frac(1, 2), rat(-1));
        let b = GammaLinear::from_int(3);
        assert_eq!(&a * &b, GammaLinear::new(frac(3, 2), rat(-3)));
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn monomial_limits() {
        use GammaFactor::*;
        // Γ(α+1)/Γ(α+β+1) at α=-3, β=0: both poles along different directions
        let m = GammaMonomial::new(rat(1), vec![Gamma(ParamArg::new(1, 1, 0)), RecipGamma(ParamArg::new(1, 1, 1))]);
        assert_eq!(m.limit(-3, 0), Err(SingularError::DirectionDependent));
        // Γ(-1+α)/Γ(-3+α): same direction, equals gamma_ratio(-1,-3)
        let m = GammaMonomial::new(rat(1), vec![Gamma(ParamArg::new(-1, 1, 0)), RecipGamma(ParamArg::new(-3, 1, 0))]);
        assert_eq!(m.limit(0, 0).unwrap(), GammaLinear::from_rational(gamma_ratio(-1, -3).unwrap()));
        // ψ(x)/Γ(x) at x=-3 reproduces the l'Hospital constant
        let m = GammaMonomial::new(rat(1), vec![Psi(ParamArg::new(-3, 0, 1)), RecipGamma(ParamArg::new(-3, 0, 1))]);
        assert_eq!(m.limit(0, 0).unwrap(), GammaLinear::from_rational(psi_over_gamma_limit(3)));
        // Γ(-α) against Γ(α+1): reflected direction carries a sign
        let m = GammaMonomial::new(rat(1), vec![Gamma(ParamArg::new(0, -1, 0)), RecipGamma(ParamArg::new(-1, 1, 0))]);
        let v = m.limit(0, 0).unwrap();
        // Γ(-ε)/Γ(-1+ε) = (-1/ε) / (-1/ε) = 1
        assert_eq!(v, GammaLinear::from_int(1));
        let near = m.eval_f64(1e-9, 0.0);
        assert!((near - 1.0).abs() < 1e-6);
        // excess denominator pole gives zero
        let m = GammaMonomial::new(rat(5), vec![RecipGamma(ParamArg::new(-2, 1, 0))]);
        assert!(m.limit(0, 0).unwrap().is_zero());
    }
}
