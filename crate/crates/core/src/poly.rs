//! Polynomials in `z` with [`GammaLinear`] coefficients and rational functions
//! whose denominators are powers of `(z-1)` and `(z+1)` only.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::exactnum::{binomial, falling, rat, rat_big, GammaLinear, Rational};

/// Dense polynomial, coefficients stored from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GammaLinear>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GammaLinear>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(GammaLinear::from_rational).collect())
    }

    pub fn constant(c: GammaLinear) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GammaLinear::one())
    }

    /// `(z + shift)^k`.
    pub fn linear_power(shift: i64, k: u32) -> Self {
        Self::from_rationals((0..=k as i64).map(|j| {
            let c = binomial(k as i64, j) * num_bigint::BigInt::from(shift).pow((k as i64 - j) as u32);
            rat_big(c)
        }))
    }

    pub fn coeffs(&self) -> &[GammaLinear] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GammaLinear {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_gamma_free(&self) -> bool {
        self.coeffs.iter().all(GammaLinear::is_rational)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().cloned().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &GammaLinear) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.scale(r)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![GammaLinear::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rat(k as i64)))
                .collect(),
        )
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, z: &Rational) -> GammaLinear {
        self.coeffs
            .iter()
            .rev()
            .fold(GammaLinear::zero(), |acc, c| &acc.scale(z) + c)
    }

    /// Coefficients in powers of `(z - c)`.
    pub fn taylor_shift(&self, c: &Rational) -> Vec<GammaLinear> {
        // repeated synthetic division by (z - c)
        let mut work = self.coeffs.clone();
        let n = work.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = work[j + 1].scale(c);
                work[j] += &t;
            }
        }
        work
    }

    /// Divides by `(z - root)` when the division is exact.
    pub fn div_linear(&self, root: &Rational) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::default());
        }
        if !self.eval_exact(root).is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let mut q = vec![GammaLinear::zero(); n - 1];
        let mut carry = GammaLinear::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &carry.scale(root);
            q[k - 1] = carry.clone();
        }
        Some(Self::new(q))
    }

    /// Double-precision evaluation, expanded about whichever of `-1, 0, 1`
    /// is closest to `z` to limit cancellation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let center = if (z - 1.0).norm() <= 0.5 {
            1
        } else if (z + 1.0).norm() <= 0.5 {
            -1
        } else {
            0
        };
        let t = z - center as f64;
        let coeffs: Vec<f64> = if center == 0 {
            self.coeffs.iter().map(GammaLinear::to_f64).collect()
        } else {
            self.taylor_shift(&rat(center))
                .iter()
                .map(GammaLinear::to_f64)
                .collect()
        };
        coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * t + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// `num(z) / ((z-1)^den_m (z+1)^den_p)` in lowest terms.
///
/// Lowest terms means `num` has no root at `1` while `den_m > 0`, and no root at
/// `-1` while `den_p > 0`, so the representation is unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFn {
    num: Poly,
    den_m: u32,
    den_p: u32,
}

impl RatFn {
    pub fn new(num: Poly, den_m: u32, den_p: u32) -> Self {
        Self { num, den_m, den_p }.normalized()
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(num: Poly) -> Self {
        Self::new(num, 0, 0)
    }

    pub fn constant(c: GammaLinear) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `c (z-1)^a (z+1)^b` for integer exponents of either sign.
    pub fn monomial(c: GammaLinear, a: i64, b: i64) -> Self {
        let mut num = Poly::constant(c);
        if a > 0 {
            num = num.mul(&Poly::linear_power(-1, a as u32));
        }
        if b > 0 {
            num = num.mul(&Poly::linear_power(1, b as u32));
        }
        Self::new(num, (-a).max(0) as u32, (-b).max(0) as u32)
    }

    /// `(z^2-1)^k` for any integer `k`.
    pub fn z2m1_power(k: i64) -> Self {
        Self::monomial(GammaLinear::one(), k, k)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_exponents(&self) -> (u32, u32) {
        (self.den_m, self.den_p)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den_m == 0 && self.den_p == 0
    }

    pub fn is_gamma_free(&self) -> bool {
        self.num.is_gamma_free()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den_m = 0;
            self.den_p = 0;
            return self;
        }
        let one = Rational::one();
        while self.den_m > 0 {
            match self.num.div_linear(&one) {
                Some(q) => {
                    self.num = q;
                    self.den_m -= 1;
                }
                None => break,
            }
        }
        let minus_one = -Rational::one();
        while self.den_p > 0 {
            match self.num.div_linear(&minus_one) {
                Some(q) => {
                    self.num = q;
                    self.den_p -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// Numerator brought over the denominator `(z-1)^dm (z+1)^dp`.
    fn lift(&self, dm: u32, dp: u32) -> Poly {
        self.num
            .mul(&Poly::linear_power(-1, dm - self.den_m))
            .mul(&Poly::linear_power(1, dp - self.den_p))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let dm = self.den_m.max(other.den_m);
        let dp = self.den_p.max(other.den_p);
        Self::new(self.lift(dm, dp).add(&other.lift(dm, dp)), dm, dp)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den_m: self.den_m,
            den_p: self.den_p,
        }
    }

    pub fn scale(&self, c: &GammaLinear) -> Self {
        Self::new(self.num.scale(c), self.den_m, self.den_p)
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        Self::new(self.num.scale_rat(r), self.den_m, self.den_p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.num),
            self.den_m + other.den_m,
            self.den_p + other.den_p,
        )
    }

    pub fn derivative(&self) -> Self {
        // d[N (z-1)^-a (z+1)^-b] = [N'(z^2-1) - a N (z+1) - b N (z-1)] / ((z-1)^(a+1) (z+1)^(b+1))
        let a = rat(self.den_m as i64);
        let b = rat(self.den_p as i64);
        let z2m1 = Poly::from_rationals([rat(-1), rat(0), rat(1)]);
        let term = self
            .num
            .derivative()
            .mul(&z2m1)
            .sub(&self.num.mul(&Poly::linear_power(1, 1)).scale_rat(&a))
            .sub(&self.num.mul(&Poly::linear_power(-1, 1)).scale_rat(&b));
        Self::new(term, self.den_m + 1, self.den_p + 1)
    }

    /// `f(-z)`.
    pub fn reflect(&self) -> Self {
        // (-z-1)^a (-z+1)^b = (-1)^(a+b) (z+1)^a (z-1)^b
        let sign = if (self.den_m + self.den_p).is_multiple_of(2) { 1 } else { -1 };
        Self::new(
            self.num.reflect().scale_rat(&rat(sign)),
            self.den_p,
            self.den_m,
        )
    }

    pub fn eval_exact(&self, z: &Rational) -> Option<GammaLinear> {
        let zm1 = z - Rational::one();
        let zp1 = z + Rational::one();
        if (self.den_m > 0 && zm1.is_zero()) || (self.den_p > 0 && zp1.is_zero()) {
            return None;
        }
        let den = num_traits::pow(zm1, self.den_m as usize) * num_traits::pow(zp1, self.den_p as usize);
        Some(self.num.eval_exact(z).scale(&(Rational::one() / den)))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let den = (z - 1.0).powi(self.den_m as i32) * (z + 1.0).powi(self.den_p as i32);
        self.num.eval(z) / den
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        match (self.den_m, self.den_p) {
            (0, 0) => Ok(()),
            (a, 0) => write!(f, "/(z-1)^{a}"),
            (0, b) => write!(f, "/(z+1)^{b}"),
            (a, b) => write!(f, "/((z-1)^{a}*(z+1)^{b})"),
        }
    }
}

/// `d^i/dz^i [(z-1)^a (z+1)^b]` expanded by the product rule.
pub fn derivative_of_power_product(a: i64, b: i64, i: u32) -> RatFn {
    (0..=i as i64).fold(RatFn::zero(), |acc, l| {
        let c = binomial(i as i64, l) * falling(a, l as u32) * falling(b, i - l as u32);
        if c.is_zero() {
            return acc;
        }
        acc.add(&RatFn::monomial(
            GammaLinear::from_rational(rat_big(c)),
            a - l,
            b - (i as i64 - l),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_rationals(cs.iter().map(|&c| rat(c)))
    }

    #[test]
    fn multiply_and_derive() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.mul(&a), p(&[1, 0, -2, 0, 1]));
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(Poly::linear_power(-1, 2), p(&[1, -2, 1]));
    }

    #[test]
    fn taylor_shift_about_one() {
        // z^2 = 1 + 2(z-1) + (z-1)^2
        let shifted = p(&[0, 0, 1]).taylor_shift(&rat(1));
        assert_eq!(shifted, vec![GammaLinear::from_int(1), GammaLinear::from_int(2), GammaLinear::from_int(1)]);
    }

    #[test]
    fn ratfn_normalizes() {
        let r = RatFn::new(p(&[-1, 0, 1]), 1, 2);
        assert_eq!(r, RatFn::new(p(&[1]), 0, 1));
        assert_eq!(RatFn::monomial(GammaLinear::one(), 2, -1), RatFn::new(p(&[1, -2, 1]), 0, 1));
    }

    #[test]
    fn ratfn_derivative_matches_power_rule() {
        let f = RatFn::monomial(GammaLinear::one(), -2, 3);
        let d = f.derivative();
        let expect = derivative_of_power_product(-2, 3, 1);
        assert_eq!(d, expect);
        let z = frac(7, 3);
        let h = f.eval_exact(&z).unwrap();
        assert!(!h.is_zero());
    }

    #[test]
    fn ratfn_reflection() {
        let f = RatFn::monomial(GammaLinear::one(), -1, 2);
        let g = f.reflect();
        let z = frac(5, 2);
        let lhs = g.eval_exact(&z).unwrap();
        let rhs = f.eval_exact(&(-z)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn numeric_eval_near_one() {
        let f = RatFn::from_poly(Poly::linear_power(-1, 8));
        let z = Complex64::new(1.001, 0.0);
        let v = f.eval(z);
        assert!((v.re - 1e-24).abs() < 1e-35);
    }
}
