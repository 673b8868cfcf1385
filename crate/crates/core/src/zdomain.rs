//! Points of the cut plane `C \ (-inf, 1]`, boundary points of the cut
//! `[-1, 1]`, and the principal-phase bookkeeping needed to evaluate
//! half-integer powers and logarithms consistently.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("point {re}{im:+}i lies on the branch cut (-inf, 1]")]
    OnCut { re: f64, im: f64 },
    #[error("coordinate is not finite")]
    NotFinite,
    #[error("on-cut abscissa {0} outside [-1, 1]")]
    OutsideInterval(f64),
    #[error("on-cut abscissa {0} is a branch point")]
    BranchPoint(f64),
    #[error("|z-1| = {0} is outside the series disc")]
    OutsideDisc(f64),
    #[error("cannot parse point `{0}`")]
    Parse(String),
}

/// Which rim of the cut is approached, or the upper/lower half plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    /// `+1` above, `-1` below.
    pub fn sign(self) -> f64 {
        match self {
            Side::Above => 1.0,
            Side::Below => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Above => "above",
            Side::Below => "below",
        })
    }
}

impl FromStr for Side {
    type Err = DomainError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "above" | "+" => Ok(Side::Above),
            "below" | "-" => Ok(Side::Below),
            other => Err(DomainError::Parse(other.to_string())),
        }
    }
}

/// A point of the cut plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPoint {
    re: f64,
    im: f64,
}

impl CutPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, DomainError> {
        if !re.is_finite() || !im.is_finite() {
            return Err(DomainError::NotFinite);
        }
        if im == 0.0 && re <= 1.0 {
            return Err(DomainError::OnCut { re, im });
        }
        Ok(Self { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    /// Half plane of the point; real points report `real_side`.
    pub fn side(&self, real_side: Side) -> Side {
        if self.im > 0.0 {
            Side::Above
        } else if self.im < 0.0 {
            Side::Below
        } else {
            real_side
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for CutPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.re, self.im)
    }
}

impl FromStr for CutPoint {
    type Err = DomainError;
    /// Parses `re,im` or a bare real `re`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DomainError::Parse(s.to_string());
        let (re, im) = match s.split_once(',') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 0.0),
        };
        CutPoint::new(re, im)
    }
}

/// Side selector for a point of `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutSide {
    Above,
    Below,
    /// The phase-averaged on-cut definition.
    Principal,
}

impl fmt::Display for CutSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutSide::Above => "above",
            CutSide::Below => "below",
            CutSide::Principal => "principal",
        })
    }
}

/// A point `x` of `[-1, 1]` together with the approach side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnCutPoint {
    x: f64,
    side: CutSide,
}

impl OnCutPoint {
    pub fn new(x: f64, side: CutSide) -> Result<Self, DomainError> {
        if !x.is_finite() {
            return Err(DomainError::NotFinite);
        }
        if !(-1.0..=1.0).contains(&x) {
            return Err(DomainError::OutsideInterval(x));
        }
        Ok(Self { x, side })
    }

    pub fn principal(x: f64) -> Result<Self, DomainError> {
        Self::new(x, CutSide::Principal)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn side(&self) -> CutSide {
        self.side
    }

    /// Rejects the endpoints, where the boundary values are singular.
    pub fn require_interior(&self) -> Result<(), DomainError> {
        if self.x.abs() == 1.0 {
            Err(DomainError::BranchPoint(self.x))
        } else {
            Ok(())
        }
    }
}

impl FromStr for OnCutPoint {
    type Err = DomainError;
    /// Parses `x@above`, `x@below` or `x@principal`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DomainError::Parse(s.to_string());
        let (x, side) = s.split_once('@').ok_or_else(bad)?;
        let x: f64 = x.trim().parse().map_err(|_| bad())?;
        let side = match side.trim() {
            "above" => CutSide::Above,
            "below" => CutSide::Below,
            "principal" => CutSide::Principal,
            _ => return Err(bad()),
        };
        OnCutPoint::new(x, side)
    }
}

/// Everything needed to evaluate a canonical form numerically: the point and
/// the logarithms of `z - 1` and `z + 1` carrying the phases in force there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    pub z: Complex64,
    pub ln_zm1: Complex64,
    pub ln_zp1: Complex64,
    /// Half plane (or rim) used to resolve the two-valued reflection.
    pub side: Side,
}

impl EvalPoint {
    /// Principal phases at a cut-plane point.
    pub fn from_cut(p: &CutPoint, real_side: Side) -> Self {
        let z = p.z();
        Self {
            z,
            ln_zm1: (z - 1.0).ln(),
            ln_zp1: (z + 1.0).ln(),
            side: p.side(real_side),
        }
    }

    /// Boundary value at `x ± i0`, using `x - 1 ± i0 = e^{±iπ}(1 - x)`.
    pub fn boundary(x: f64, side: Side) -> Result<Self, DomainError> {
        if !(-1.0 < x && x < 1.0) {
            return Err(if x.abs() == 1.0 {
                DomainError::BranchPoint(x)
            } else {
                DomainError::OutsideInterval(x)
            });
        }
        Ok(Self {
            z: Complex64::new(x, 0.0),
            ln_zm1: Complex64::new((1.0 - x).ln(), side.sign() * PI),
            ln_zp1: Complex64::new((1.0 + x).ln(), 0.0),
            side,
        })
    }

    /// The point `-z`, with `-z = e^{∓iπ} z` for the upper/lower half plane.
    pub fn reflect(&self) -> Self {
        let shift = Complex64::new(0.0, -self.side.sign() * PI);
        Self {
            z: -self.z,
            ln_zm1: self.ln_zp1 + shift,
            ln_zp1: self.ln_zm1 + shift,
            side: self.side.flipped(),
        }
    }

    /// `ln((z+1)/2)`.
    pub fn ln_half_plus(&self) -> Complex64 {
        self.ln_zp1 - LN_2
    }

    /// `ln((z-1)/2)`.
    pub fn ln_half_minus(&self) -> Complex64 {
        self.ln_zm1 - LN_2
    }

    /// `(z^2-1)^{k/2}` as the product of the two factor powers.
    pub fn z2m1_half_power(&self, k: i64) -> Complex64 {
        ((self.ln_zm1 + self.ln_zp1) * (k as f64 / 2.0)).exp()
    }
}

/// Base of a half-integer power prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerBase {
    ZMinus1,
    ZPlus1,
    Z2Minus1,
    /// `(z+1)/(z-1)`.
    RatioPlusOverMinus,
    /// `(z-1)/(z+1)`.
    RatioMinusOverPlus,
}

/// `base^{half_exponent/2}` under the principal phase convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfPower {
    pub base: PowerBase,
    pub half_exponent: i64,
}

impl HalfPower {
    pub fn new(base: PowerBase, half_exponent: i64) -> Self {
        Self {
            base,
            half_exponent,
        }
    }

    pub fn eval(&self, p: &EvalPoint) -> Complex64 {
        let log = match self.base {
            PowerBase::ZMinus1 => p.ln_zm1,
            PowerBase::ZPlus1 => p.ln_zp1,
            PowerBase::Z2Minus1 => p.ln_zm1 + p.ln_zp1,
            PowerBase::RatioPlusOverMinus => p.ln_zp1 - p.ln_zm1,
            PowerBase::RatioMinusOverPlus => p.ln_zm1 - p.ln_zp1,
        };
        (log * (self.half_exponent as f64 / 2.0)).exp()
    }
}

/// Principal `ln((z+1)/2)`.
pub fn principal_log_half(z: &CutPoint) -> Complex64 {
    ((z.z() + 1.0) / 2.0).ln()
}

/// Record of the phase applied to `z`, `z - 1` and `z + 1` under reflection:
/// each factor is multiplied by `e^{i·phase_sign·π}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseRecord {
    pub phase_sign: i8,
}

/// `-z` together with the phase used; real `z > 1` takes `real_side`.
pub fn reflect(z: &CutPoint, real_side: Side) -> (EvalPoint, PhaseRecord) {
    let p = EvalPoint::from_cut(z, real_side);
    let phase_sign = if p.side == Side::Above { -1 } else { 1 };
    (p.reflect(), PhaseRecord { phase_sign })
}

/// Which on-cut combination to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnCutKind {
    /// `½[e^{±iπm/2} f(x+i0) + e^{∓iπm/2} f(x-i0)]`.
    First,
    /// `((-1)^m/2)[e^{∓iπm/2} f(x+i0) + e^{±iπm/2} f(x-i0)]`.
    Second,
}

/// Combines the two rim values of a function of order `sign·m`.
pub fn on_cut_value(
    f_above: Complex64,
    f_below: Complex64,
    m: u32,
    sign: i32,
    kind: OnCutKind,
) -> Complex64 {
    let phase = Complex64::from_polar(1.0, sign.signum() as f64 * PI * m as f64 / 2.0);
    // exact quarter turns avoid stray 1e-17 parts
    let phase = snap_unit(phase);
    match kind {
        OnCutKind::First => (phase * f_above + phase.conj() * f_below) * 0.5,
        OnCutKind::Second => {
            let w = if m.is_multiple_of(2) { 0.5 } else { -0.5 };
            (phase.conj() * f_above + phase * f_below) * w
        }
    }
}

fn snap_unit(c: Complex64) -> Complex64 {
    let r = |v: f64| {
        if v.abs() < 1e-15 {
            0.0
        } else if (v.abs() - 1.0).abs() < 1e-15 {
            v.signum()
        } else {
            v
        }
    };
    Complex64::new(r(c.re), r(c.im))
}

/// Relative closeness with an absolute floor for tiny magnitudes.
pub fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale > 1e-300 {
        diff <= rel * scale
    } else {
        diff <= 1e-300
    }
}

/// Relative deviation `|a-b| / max(|a|,|b|)`, or the absolute one below `1e-300`.
pub fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    let diff = (a - b).norm();
    if scale > 1e-300 {
        diff / scale
    } else {
        diff
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_half_examples() {
        let v = principal_log_half(&CutPoint::new(3.0, 0.0).unwrap());
        assert!((v - c(LN_2, 0.0)).norm() < 1e-15);
        let v = principal_log_half(&CutPoint::new(1.0, 2.0).unwrap());
        assert!((v - c(0.5 * LN_2, PI / 4.0)).norm() < 1e-15);
        assert!(CutPoint::new(-2.0, 0.0).is_err());
        assert!(CutPoint::new(1.0, 0.0).is_err());
    }

    #[test]
    fn reflect_phase_sign() {
        let (_, ph) = reflect(&CutPoint::new(2.0, 1.0).unwrap(), Side::Above);
        assert_eq!(ph.phase_sign, -1);
        let (_, ph) = reflect(&CutPoint::new(2.0, -1.0).unwrap(), Side::Above);
        assert_eq!(ph.phase_sign, 1);
    }

    #[test]
    fn reflected_logs_are_principal_off_axis() {
        for &(re, im) in &[(2.0, 1.0), (-0.3, 0.2), (0.5, -3.0), (-4.0, -0.1)] {
            let p = EvalPoint::from_cut(&CutPoint::new(re, im).unwrap(), Side::Above);
            let r = p.reflect();
            let q = EvalPoint::from_cut(&CutPoint::new(-re, -im).unwrap(), Side::Above);
            assert!((r.ln_zm1 - q.ln_zm1).norm() < 1e-14);
            assert!((r.ln_zp1 - q.ln_zp1).norm() < 1e-14);
        }
    }

    #[test]
    fn on_cut_combinations() {
        let (a, b) = (c(1.0, 2.0), c(-0.5, 0.25));
        assert_eq!(on_cut_value(a, b, 0, 1, OnCutKind::First), (a + b) * 0.5);
        let v = on_cut_value(a, b, 1, 1, OnCutKind::First);
        assert!((v - c(0.0, 0.5) * (a - b)).norm() < 1e-15);
        let q = on_cut_value(a, b, 1, 1, OnCutKind::Second);
        let expect = (c(0.0, -1.0) * a + c(0.0, 1.0) * b) * -0.5;
        assert!((q - expect).norm() < 1e-15);
    }

    #[test]
    fn parse_points() {
        let p: CutPoint = "2.5,0".parse().unwrap();
        assert_eq!(p.re(), 2.5);
        let q: OnCutPoint = "0.25@below".parse().unwrap();
        assert_eq!(q.side(), CutSide::Below);
        assert!("0.2,0".parse::<CutPoint>().is_err());
    }
}
