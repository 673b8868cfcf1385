//! Exact normal form for every quantity the crate produces:
//!
//! `(z^2-1)^{-p/2} [A ln((z+1)/2) + C ln((z-1)/2) + D iπ + B]`
//!
//! with `p` in `{0, 1}` and `A, B, C, D` rational functions whose denominators
//! are powers of `z-1` and `z+1`. Integer powers of `z^2-1` are absorbed into
//! the rational parts, so two forms are equal as functions iff they are equal
//! as data.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_traits::One;

use crate::exactnum::{binomial, factorial, rat, rat_big, GammaLinear, Rational};
use crate::poly::{derivative_of_power_product, Poly, RatFn};
use crate::zdomain::{EvalPoint, Side};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CanonicalForm {
    parity: u8,
    log_plus: RatFn,
    log_minus: RatFn,
    i_pi: RatFn,
    rational: RatFn,
}

/// How the logarithmic part is spelled when rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogStyle {
    /// `log((z+1)/2)` and, if present, `log((z-1)/2)`.
    Half,
    /// `log((z+1)/(z-1))` when the two coefficients are opposite.
    Ratio,
}

impl CanonicalForm {
    /// `(z^2-1)^{half_exp/2} [log_plus L+ + log_minus L- + i_pi iπ + rational]`.
    pub fn new(half_exp: i64, log_plus: RatFn, log_minus: RatFn, i_pi: RatFn, rational: RatFn) -> Self {
        let parity = half_exp.rem_euclid(2);
        // (z^2-1)^{h/2} = (z^2-1)^{-p/2} (z^2-1)^{(h+p)/2}
        let k = (half_exp + parity) / 2;
        let f = RatFn::z2m1_power(k);
        Self {
            parity: parity as u8,
            log_plus: log_plus.mul(&f),
            log_minus: log_minus.mul(&f),
            i_pi: i_pi.mul(&f),
            rational: rational.mul(&f),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_ratfn(r: RatFn) -> Self {
        Self::new(0, RatFn::zero(), RatFn::zero(), RatFn::zero(), r)
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_ratfn(RatFn::from_poly(p))
    }

    pub fn constant(c: GammaLinear) -> Self {
        Self::from_ratfn(RatFn::constant(c))
    }

    /// `ln((z+1)/2)`.
    pub fn log_half_plus() -> Self {
        Self::new(0, RatFn::constant(GammaLinear::one()), RatFn::zero(), RatFn::zero(), RatFn::zero())
    }

    /// `ln((z-1)/2)`.
    pub fn log_half_minus() -> Self {
        Self::new(0, RatFn::zero(), RatFn::constant(GammaLinear::one()), RatFn::zero(), RatFn::zero())
    }

    /// `ln((z+1)/(z-1))`.
    pub fn log_ratio() -> Self {
        Self::log_half_plus() - Self::log_half_minus()
    }

    /// The constant `iπ`.
    pub fn i_pi() -> Self {
        Self::new(0, RatFn::zero(), RatFn::zero(), RatFn::constant(GammaLinear::one()), RatFn::zero())
    }

    /// `(z^2-1)^{k/2}`.
    pub fn z2m1_half_power(k: i64) -> Self {
        Self::new(k, RatFn::zero(), RatFn::zero(), RatFn::zero(), RatFn::constant(GammaLinear::one()))
    }

    /// `((z+1)/(z-1))^{k/2} = (z+1)^k (z^2-1)^{-k/2}`.
    pub fn ratio_half_power(k: i64) -> Self {
        Self::new(-k, RatFn::zero(), RatFn::zero(), RatFn::zero(), RatFn::monomial(GammaLinear::one(), 0, k))
    }

    /// Exponent `p` of the prefactor `(z^2-1)^{-p/2}`.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn log_plus(&self) -> &RatFn {
        &self.log_plus
    }

    pub fn log_minus(&self) -> &RatFn {
        &self.log_minus
    }

    pub fn i_pi_part(&self) -> &RatFn {
        &self.i_pi
    }

    pub fn rational(&self) -> &RatFn {
        &self.rational
    }

    fn parts(&self) -> [&RatFn; 4] {
        [&self.log_plus, &self.log_minus, &self.i_pi, &self.rational]
    }

    fn map(&self, f: impl Fn(&RatFn) -> RatFn) -> Self {
        Self {
            parity: self.parity,
            log_plus: f(&self.log_plus),
            log_minus: f(&self.log_minus),
            i_pi: f(&self.i_pi),
            rational: f(&self.rational),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|r| r.is_zero())
    }

    /// True when no coefficient anywhere carries Euler's constant.
    pub fn is_gamma_free(&self) -> bool {
        self.parts().iter().all(|r| r.is_gamma_free())
    }

    /// Number of coefficients with a non-zero γ component.
    pub fn gamma_residue(&self) -> usize {
        self.parts()
            .iter()
            .map(|r| r.num().coeffs().iter().filter(|c| !c.is_rational()).count())
            .sum()
    }

    /// Coefficient of `ln((z+1)/(z-1))`, when the two logarithms enter only
    /// through that ratio.
    pub fn log_ratio_coefficient(&self) -> Option<Self> {
        self.log_plus.add(&self.log_minus).is_zero().then(|| Self {
            parity: self.parity,
            log_plus: RatFn::zero(),
            log_minus: RatFn::zero(),
            i_pi: RatFn::zero(),
            rational: self.log_plus.clone(),
        })
    }

    /// The same form with its logarithmic and `iπ` parts removed.
    pub fn rational_part(&self) -> Self {
        Self {
            parity: self.parity,
            log_plus: RatFn::zero(),
            log_minus: RatFn::zero(),
            i_pi: RatFn::zero(),
            rational: self.rational.clone(),
        }
    }

    pub fn has_logs(&self) -> bool {
        !self.log_plus.is_zero() || !self.log_minus.is_zero()
    }

    pub fn has_i_pi(&self) -> bool {
        !self.i_pi.is_zero()
    }

    pub fn scale(&self, c: &GammaLinear) -> Self {
        self.map(|r| r.scale(c))
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.map(|x| x.scale_rat(r))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_rat(&rat(k))
    }

    pub fn mul_ratfn(&self, f: &RatFn) -> Self {
        self.map(|r| r.mul(f))
    }

    /// Multiplies by `(z^2-1)^{k/2}`.
    pub fn mul_z2m1_half_power(&self, k: i64) -> Self {
        Self::new(
            k - self.parity as i64,
            self.log_plus.clone(),
            self.log_minus.clone(),
            self.i_pi.clone(),
            self.rational.clone(),
        )
    }

    /// Multiplies by `((z+1)/(z-1))^{k/2}`.
    pub fn mul_ratio_half_power(&self, k: i64) -> Self {
        self.mul_ratfn(&RatFn::monomial(GammaLinear::one(), 0, k))
            .mul_z2m1_half_power(-k)
    }

    /// Multiplies by a log-free form.
    ///
    /// # Panics
    /// Panics if both factors carry logarithms or `iπ`.
    pub fn mul(&self, other: &Self) -> Self {
        let (plain, other) = if !self.has_logs() && !self.has_i_pi() {
            (self, other)
        } else {
            (other, self)
        };
        assert!(
            !plain.has_logs() && !plain.has_i_pi(),
            "product of two transcendental forms"
        );
        other
            .mul_ratfn(&plain.rational)
            .mul_z2m1_half_power(-(plain.parity as i64))
    }

    /// `d/dz`.
    pub fn derivative(&self) -> Self {
        // d[(z^2-1)^{-p/2} R] = (z^2-1)^{-p/2} [R' - p z R / (z^2-1)]
        let p = self.parity as i64;
        let shift = RatFn::new(
            Poly::from_rationals([rat(0), rat(-p)]),
            1,
            1,
        );
        let d = |r: &RatFn| r.derivative().add(&r.mul(&shift));
        let from_logs = self
            .log_plus
            .mul(&RatFn::monomial(GammaLinear::one(), 0, -1))
            .add(&self.log_minus.mul(&RatFn::monomial(GammaLinear::one(), -1, 0)));
        Self {
            parity: self.parity,
            log_plus: d(&self.log_plus),
            log_minus: d(&self.log_minus),
            i_pi: d(&self.i_pi),
            rational: d(&self.rational).add(&from_logs),
        }
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// The same function evaluated at `-z`, for `z` in the half plane `side`.
    ///
    /// Uses `-z = e^{∓iπ} z`, so `ln((-z+1)/2) = ln((z-1)/2) ∓ iπ` and
    /// `((-z)^2-1)^{-p/2} = (-1)^p (z^2-1)^{-p/2}`.
    pub fn reflect(&self, side: Side) -> Self {
        let s = rat(if side == Side::Above { 1 } else { -1 });
        let lp = self.log_minus.reflect();
        let lm = self.log_plus.reflect();
        let ipi = self.i_pi.reflect().sub(&lp.add(&lm).scale_rat(&s));
        let out = Self {
            parity: self.parity,
            log_plus: lp,
            log_minus: lm,
            i_pi: ipi,
            rational: self.rational.reflect(),
        };
        if self.parity == 1 {
            -out
        } else {
            out
        }
    }

    pub fn eval(&self, p: &EvalPoint) -> Complex64 {
        let pref = p.z2m1_half_power(-(self.parity as i64));
        let z = p.z;
        let mut acc = self.rational.eval(z);
        if !self.log_plus.is_zero() {
            acc += self.log_plus.eval(z) * p.ln_half_plus();
        }
        if !self.log_minus.is_zero() {
            acc += self.log_minus.eval(z) * p.ln_half_minus();
        }
        if !self.i_pi.is_zero() {
            acc += self.i_pi.eval(z) * Complex64::new(0.0, std::f64::consts::PI);
        }
        pref * acc
    }

    /// Exact value of the bracket at a rational point, if log- and `iπ`-free.
    pub fn bracket_at(&self, z: &Rational) -> Option<GammaLinear> {
        if self.has_logs() || self.has_i_pi() {
            return None;
        }
        self.rational.eval_exact(z)
    }

    /// Text rendering with the prefactor written as `(z^2-1)^(half_exp/2)`.
    pub fn render(&self, half_exp: i64, style: LogStyle) -> String {
        // rescale bracket so that the displayed prefactor is (z^2-1)^{half_exp/2}
        let target_parity = half_exp.rem_euclid(2) as u8;
        let (h, parts) = if target_parity == self.parity {
            let k = (-(self.parity as i64) - half_exp) / 2;
            let f = RatFn::z2m1_power(k);
            (half_exp, self.parts().map(|r| r.mul(&f)))
        } else {
            (-(self.parity as i64), self.parts().map(|r| r.clone()))
        };
        let [lp, lm, ipi, r] = parts;
        let mut terms = Vec::new();
        match style {
            LogStyle::Ratio if lp.add(&lm).is_zero() && !lp.is_zero() => {
                terms.push(format!("{lp}*log((z+1)/(z-1))"));
            }
            _ => {
                if !lp.is_zero() {
                    terms.push(format!("{lp}*log((z+1)/2)"));
                }
                if !lm.is_zero() {
                    terms.push(format!("{lm}*log((z-1)/2)"));
                }
            }
        }
        if !ipi.is_zero() {
            terms.push(format!("{ipi}*i*pi"));
        }
        if !r.is_zero() || terms.is_empty() {
            terms.push(format!("{r}"));
        }
        let body = terms.join(" + ");
        if h == 0 {
            body
        } else {
            format!("(z^2-1)^({h}/2) * [{body}]")
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(-(self.parity as i64), LogStyle::Half))
    }
}

/// # Panics
/// Panics when the prefactor parities differ; such sums have no canonical form.
impl Add for &CanonicalForm {
    type Output = CanonicalForm;
    fn add(self, rhs: Self) -> CanonicalForm {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(self.parity, rhs.parity, "adding forms of different prefactor parity");
        CanonicalForm {
            parity: self.parity,
            log_plus: self.log_plus.add(&rhs.log_plus),
            log_minus: self.log_minus.add(&rhs.log_minus),
            i_pi: self.i_pi.add(&rhs.i_pi),
            rational: self.rational.add(&rhs.rational),
        }
    }
}

impl Add for CanonicalForm {
    type Output = CanonicalForm;
    fn add(self, rhs: Self) -> CanonicalForm {
        &self + &rhs
    }
}

impl Sub for &CanonicalForm {
    type Output = CanonicalForm;
    fn sub(self, rhs: Self) -> CanonicalForm {
        self + &(-rhs.clone())
    }
}

impl Sub for CanonicalForm {
    type Output = CanonicalForm;
    fn sub(self, rhs: Self) -> CanonicalForm {
        &self - &rhs
    }
}

impl Neg for CanonicalForm {
    type Output = CanonicalForm;
    fn neg(self) -> CanonicalForm {
        self.map(RatFn::neg)
    }
}

impl std::iter::Sum for CanonicalForm {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CanonicalForm::zero(), |a, b| &a + &b)
    }
}

/// Logarithmic factor multiplying the power product in a Rodrigues derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogFactor {
    One,
    /// `ln((z+1)/2)`.
    HalfPlus,
    /// `ln((z-1)/2)`.
    HalfMinus,
}

/// `d^k/dz^k [(z-1)^a (z+1)^b · log]` by the Leibniz rule, exponents of
/// either sign.
pub fn leibniz(a: i64, b: i64, log: LogFactor, k: u32) -> CanonicalForm {
    let base = derivative_of_power_product(a, b, k);
    let (log_shift_m, log_shift_p) = match log {
        LogFactor::One => return CanonicalForm::from_ratfn(base),
        LogFactor::HalfPlus => (0, 1),
        LogFactor::HalfMinus => (1, 0),
    };
    // d^j ln(z±1) = (-1)^{j-1} (j-1)! (z±1)^{-j}
    let rational = (1..=k).fold(RatFn::zero(), |acc, j| {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let c = binomial(k as i64, j as i64) * factorial(j - 1) * sign;
        let dlog = RatFn::monomial(
            GammaLinear::from_rational(rat_big(c)),
            -(j as i64) * log_shift_m,
            -(j as i64) * log_shift_p,
        );
        acc.add(&derivative_of_power_product(a, b, k - j).mul(&dlog))
    });
    let (lp, lm) = match log {
        LogFactor::HalfPlus => (base, RatFn::zero()),
        _ => (RatFn::zero(), base),
    };
    CanonicalForm::new(0, lp, lm, RatFn::zero(), rational)
}

/// `d^k/dz^k (z^2-1)^j`, any integer `j`.
pub fn d_z2m1_power(j: i64, k: u32) -> CanonicalForm {
    leibniz(j, j, LogFactor::One, k)
}

/// `d^k/dz^k [(z^2-1)^j ln((z+1)/2)]`.
pub fn d_z2m1_power_log(j: i64, k: u32) -> CanonicalForm {
    leibniz(j, j, LogFactor::HalfPlus, k)
}

/// Constant-free check that `d^k` kills a polynomial of degree `< k`.
pub fn annihilates(p: &Poly, k: u32) -> bool {
    p.degree().is_none_or(|d| (d as u32) < k)
}

/// `1/c` for a non-zero rational, convenience for formula code.
pub fn inv(c: Rational) -> Rational {
    Rational::one() / c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;
    use crate::zdomain::CutPoint;

    fn pt(re: f64, im: f64) -> EvalPoint {
        EvalPoint::from_cut(&CutPoint::new(re, im).unwrap(), Side::Above)
    }

    #[test]
    fn leibniz_matches_repeated_differentiation() {
        for &(a, b) in &[(2, 3), (-1, 2), (3, -2), (-2, -2)] {
            for log in [LogFactor::One, LogFactor::HalfPlus, LogFactor::HalfMinus] {
                let start = leibniz(a, b, log, 0);
                for k in 0..5 {
                    assert_eq!(leibniz(a, b, log, k), start.nth_derivative(k), "a={a} b={b} k={k}");
                }
            }
        }
    }

    #[test]
    fn ratio_power_identity() {
        let one = CanonicalForm::ratio_half_power(3).mul(&CanonicalForm::ratio_half_power(-3));
        assert_eq!(one, CanonicalForm::constant(GammaLinear::one()));
        let p = pt(0.3, 0.7);
        let v = CanonicalForm::ratio_half_power(1).eval(&p);
        let direct = ((p.z + 1.0) / (p.z - 1.0)).sqrt();
        assert!((v - direct).norm() < 1e-14);
    }

    #[test]
    fn even_half_power_is_integer_power() {
        let f = CanonicalForm::z2m1_half_power(4);
        assert_eq!(f.parity(), 0);
        let p = pt(-1.5, 0.25);
        let v = f.eval(&p);
        let direct = (p.z * p.z - 1.0).powi(2);
        assert!((v - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn symbolic_and_numeric_reflection_agree() {
        let f = &leibniz(1, -2, LogFactor::HalfPlus, 2).mul_z2m1_half_power(1)
            + &CanonicalForm::log_half_minus().mul_z2m1_half_power(3);
        for &(re, im) in &[(2.0, 1.0), (0.3, -0.4), (5.0, 0.0)] {
            let p = pt(re, im);
            let a = f.reflect(p.side).eval(&p);
            let b = f.eval(&p.reflect());
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn derivative_of_log_half() {
        let d = CanonicalForm::log_half_plus().derivative();
        assert_eq!(d, CanonicalForm::from_ratfn(RatFn::monomial(GammaLinear::one(), 0, -1)));
        let r = d.bracket_at(&rat(3)).unwrap();
        assert_eq!(r, GammaLinear::from_rational(frac(1, 4)));
    }
}
