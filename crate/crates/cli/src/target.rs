//! What to evaluate: a function, its degree and order, and the dispatch to
//! the library for numeric values, exact forms and oracles.

use std::fmt;

use clap::ValueEnum;
use legendre_dnu::canonical::{CanonicalForm, LogStyle};
use legendre_dnu::dnu_p::{auto_method, d2p_dnu2, d2p_form, dp_dnu, dp_dnu_on_cut, dp_form, DnuRegime};
use legendre_dnu::error::Error;
use legendre_dnu::jacobi::{
    jacobi_dbeta_f64, jacobi_dbeta_general, jacobi_poly, jacobi_repr_f64, JacobiParams, PolyCF, DBETA_METHODS,
    POLY_METHODS,
};
use legendre_dnu::legendre_p::{p_eval, p_form, p_methods, p_on_cut, OrderSpec, Regime, Sign};
use legendre_dnu::legendre_q::{
    dq_form, dq_via_second_derivatives, q_eval, q_form, q_methods, q_negdeg, q_negdeg_form, q_on_cut, w_form, w_poly,
    DegreePoint, NEGDEG_METHODS, W_METHODS,
};
use legendre_dnu::method::{MethodChoice, MethodId};
use legendre_dnu::oracles::{
    contour_dnu, dnu_series, dnu_series_closed, fd_dnu, on_cut_closed, p_series, p_series_on_cut, ContourConfig,
    FdOrder, OnCutClosedForm, SeriesConfig, FD_DISC,
};
use legendre_dnu::zdomain::{CutPoint, CutSide, EvalPoint, OnCutPoint, Side};
use num_complex::Complex64;

use crate::CliError;

/// The functions the command line can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Func {
    #[value(name = "P")]
    P,
    #[value(name = "dP")]
    DP,
    #[value(name = "d2P")]
    D2P,
    #[value(name = "Q")]
    Q,
    #[value(name = "dQ")]
    DQ,
    #[value(name = "W")]
    W,
    #[value(name = "Jacobi")]
    Jacobi,
    #[value(name = "dJacobi")]
    DJacobi,
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// An evaluation point: off the cut, or on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Cut(CutPoint),
    OnCut(OnCutPoint),
}

impl Point {
    pub fn as_complex(&self) -> Complex64 {
        match self {
            Point::Cut(z) => z.z(),
            Point::OnCut(x) => Complex64::new(x.x(), 0.0),
        }
    }
}

/// One numeric result.
#[derive(Debug, Clone, PartialEq)]
pub struct Eval {
    pub label: String,
    pub value: Complex64,
    pub err_est: Option<f64>,
}

/// An exact result, comparable across methods.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactForm {
    Legendre(CanonicalForm),
    Polynomial(PolyCF),
}

impl ExactForm {
    pub fn gamma_residue(&self) -> usize {
        match self {
            ExactForm::Legendre(f) => f.gamma_residue(),
            ExactForm::Polynomial(p) => p.coeffs().iter().filter(|c| !c.is_rational()).count(),
        }
    }
}

/// A fully specified function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub func: Func,
    pub order: OrderSpec,
    pub at: DegreePoint,
    pub alpha: f64,
    pub beta: f64,
    /// Side used for real `z > 1` and for exact forms without a point.
    pub side: Side,
}

fn usage(e: Error) -> CliError {
    match e {
        Error::NonConvergence(_) | Error::Exact(_) => CliError::Failed(e.to_string()),
        Error::MethodInvalid { .. } => CliError::NotApplicable(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

impl Target {
    fn n(&self) -> u32 {
        self.order.n
    }

    fn m(&self) -> u32 {
        self.order.m
    }

    fn super_plus(&self) -> bool {
        self.order.sign == Sign::Plus && self.order.regime() == Regime::Supercritical
    }

    fn jacobi_params(&self) -> Result<JacobiParams, CliError> {
        let int = |v: f64| (v.fract() == 0.0 && v.abs() < 1e6).then_some(v as i64);
        match (int(self.alpha), int(self.beta)) {
            (Some(a), Some(b)) => Ok(JacobiParams::new(self.n(), a, b)),
            _ => Err(CliError::Usage(
                "exact Jacobi output needs integer --alpha and --beta".into(),
            )),
        }
    }

    /// Rejects requests outside the regime of the chosen function.
    pub fn validate(&self) -> Result<(), CliError> {
        let (n, m) = (self.n(), self.m());
        let fail = |msg: String| Err(CliError::Usage(msg));
        match self.func {
            Func::D2P if !self.super_plus() => fail(format!(
                "d2P is available for P_n^{{+m}} with m > n (got n={n}, m={m}, sign {}); for m <= n the second degree derivative has no closed form here",
                self.order.sign
            )),
            Func::Q if self.at == DegreePoint::MinusNMinus1 && !self.super_plus() => fail(format!(
                "Q at degree -n-1 needs sign + and m > n (got n={n}, m={m}, sign {})",
                self.order.sign
            )),
            Func::DQ if !self.super_plus() => fail(format!(
                "dQ needs sign + and m > n (got n={n}, m={m}, sign {}); for m <= n the degree derivative of Q is not covered",
                self.order.sign
            )),
            Func::W if m > n => fail(format!(
                "W is defined for 0 <= m <= n (got n={n}, m={m}); for m > n use Q directly"
            )),
            _ => Ok(()),
        }
    }

    /// A note for requests that are valid but trivially zero.
    pub fn note(&self) -> Option<String> {
        let (n, m) = (self.n(), self.m());
        match (self.func, self.super_plus()) {
            (Func::P, true) => Some(format!(
                "note: P_n^{{+m}} vanishes identically for m > n (n={n}, m={m}); use sign - for P_n^{{-m}}"
            )),
            (Func::Q, false)
                if self.order.sign == Sign::Minus
                    && self.order.regime() == Regime::Supercritical
                    && self.at == DegreePoint::PlusN =>
            {
                Some(format!("note: Q_n^{{-m}} with m > n is the zero of its Gamma-ratio definition (n={n}, m={m})"))
            }
            _ => None,
        }
    }

    /// All representations of the function, sorted by identifier.
    pub fn methods(&self) -> Vec<MethodId> {
        let o = self.order;
        let mut v: Vec<MethodId> = match self.func {
            Func::P => p_methods(o),
            Func::DP => {
                let r = DnuRegime::of(o);
                r.methods().iter().chain(r.jacobi_routes()).copied().collect()
            }
            Func::D2P => vec![MethodId::C631],
            Func::Q => match self.at {
                DegreePoint::PlusN => q_methods(o).to_vec(),
                DegreePoint::MinusNMinus1 => NEGDEG_METHODS.to_vec(),
            },
            Func::DQ => match self.at {
                DegreePoint::PlusN => vec![MethodId::C636, MethodId::VIA635],
                DegreePoint::MinusNMinus1 => vec![MethodId::C638],
            },
            Func::W => W_METHODS.to_vec(),
            Func::Jacobi => POLY_METHODS.to_vec(),
            Func::DJacobi => DBETA_METHODS.to_vec(),
        };
        v.sort();
        v
    }

    /// The method picked for `auto`, if the function has representations.
    pub fn auto(&self, point: Option<&Point>) -> Option<MethodId> {
        match self.func {
            Func::DP => Some(auto_method(self.order, point.map_or(Complex64::new(2.0, 0.0), Point::as_complex))),
            Func::Jacobi => Some(MethodId::A1),
            Func::DJacobi => Some(MethodId::A15),
            _ => {
                let methods = self.methods();
                // first in library order, which lists the defining representation first
                let preferred = match self.func {
                    Func::P => p_methods(self.order).first().copied(),
                    Func::Q if self.at == DegreePoint::PlusN => q_methods(self.order).first().copied(),
                    Func::Q => Some(NEGDEG_METHODS[0]),
                    Func::DQ if self.at == DegreePoint::PlusN => Some(MethodId::C636),
                    Func::W => Some(W_METHODS[0]),
                    _ => methods.first().copied(),
                };
                preferred
            }
        }
    }

    fn check_method(&self, method: MethodId) -> Result<(), CliError> {
        if self.methods().contains(&method) {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "method {method} does not apply to {} at n={} m={}{}; applicable: {}",
                self.func,
                self.n(),
                self.order.sign,
                self.m(),
                self.methods().iter().map(|m| m.name()).collect::<Vec<_>>().join(", ")
            )))
        }
    }

    fn no_on_cut(&self) -> CliError {
        CliError::Usage(format!("{} has no on-cut evaluation; give a point off [-1, 1] with --z", self.func))
    }

    /// Numeric value at a point by one method (`None` for the automatic choice).
    pub fn evaluate(&self, point: &Point, method: Option<MethodId>) -> Result<Eval, CliError> {
        if let Some(m) = method {
            self.check_method(m)?;
        }
        let chosen = method.or_else(|| self.auto(Some(point)));
        let o = self.order;
        let side = self.side;
        let id = || chosen.ok_or_else(|| CliError::Usage(format!("{} has no representation here", self.func)));
        let value = match (self.func, point) {
            (Func::P, Point::Cut(z)) => p_eval(o, z, id()?, side).map_err(usage)?.numeric,
            (Func::P, Point::OnCut(x)) => p_on_cut(o, x, id()?).map_err(usage)?.numeric,
            (Func::DP, Point::Cut(z)) => dp_dnu(o, z, MethodChoice::One(id()?), side).map_err(usage)?.numeric,
            (Func::DP, Point::OnCut(x)) => dp_dnu_on_cut(o, x, MethodChoice::One(id()?)).map_err(usage)?,
            (Func::D2P, Point::Cut(z)) => d2p_dnu2(o.n, o.m, z, side).map_err(usage)?.numeric,
            (Func::Q, Point::Cut(z)) if self.at == DegreePoint::PlusN => {
                let choice = chosen.map_or(MethodChoice::Auto, MethodChoice::One);
                q_eval(o, z, choice, side).map_err(usage)?.numeric
            }
            (Func::Q, Point::OnCut(x)) if self.at == DegreePoint::PlusN => {
                let choice = chosen.map_or(MethodChoice::Auto, MethodChoice::One);
                q_on_cut(o, x, choice).map_err(usage)?
            }
            (Func::Q, Point::Cut(z)) => q_negdeg(o.n, o.m, z, id()?, side).map_err(usage)?.numeric,
            (Func::DQ, Point::Cut(z)) => {
                let p = EvalPoint::from_cut(z, side);
                self.dq(id()?, p.side)?.eval(&p)
            }
            (Func::W, Point::Cut(z)) => w_poly(o, z, id()?, side).map_err(usage)?.numeric,
            (Func::Jacobi, p) => {
                jacobi_repr_f64(o.n, self.alpha, self.beta, p.as_complex(), id()?).map_err(usage)?
            }
            (Func::DJacobi, p) => {
                jacobi_dbeta_f64(o.n, self.alpha, self.beta, p.as_complex(), id()?).map_err(usage)?
            }
            _ => return Err(self.no_on_cut()),
        };
        Ok(Eval {
            label: chosen.map_or_else(|| "zero".to_string(), |m| m.name().to_string()),
            value,
            err_est: None,
        })
    }

    fn dq(&self, method: MethodId, side: Side) -> Result<CanonicalForm, CliError> {
        let (n, m) = (self.n(), self.m());
        match method {
            MethodId::VIA635 => dq_via_second_derivatives(n, m, side),
            _ => dq_form(n, m, self.at, side),
        }
        .map_err(usage)
    }

    /// Exact form by one method, for the half plane `side`.
    pub fn exact(&self, method: Option<MethodId>, side: Side) -> Result<ExactForm, CliError> {
        if let Some(m) = method {
            self.check_method(m)?;
        }
        let chosen = method.or_else(|| self.auto(None));
        let o = self.order;
        let id = || chosen.ok_or_else(|| CliError::Usage(format!("{} has no representation here", self.func)));
        let form = match self.func {
            Func::P => p_form(o, id()?),
            Func::DP => dp_form(o, id()?),
            Func::D2P => d2p_form(o.n, o.m, MethodId::R532),
            Func::Q if self.at == DegreePoint::PlusN => match chosen {
                Some(m) => q_form(o, m),
                None => Ok(CanonicalForm::zero()),
            },
            Func::Q => q_negdeg_form(o.n, o.m, id()?),
            Func::DQ => return self.dq(id()?, side).map(ExactForm::Legendre),
            Func::W => w_form(o, id()?),
            Func::Jacobi => {
                let p = jacobi_poly(self.jacobi_params()?, MethodChoice::One(id()?)).map_err(usage)?;
                return Ok(ExactForm::Polynomial(p.poly));
            }
            Func::DJacobi => {
                let d = jacobi_dbeta_general(self.jacobi_params()?, id()?).map_err(usage)?;
                return Ok(ExactForm::Polynomial(d.poly));
            }
        };
        form.map(ExactForm::Legendre).map_err(usage)
    }

    /// Text of an exact form: prefactor `(z^2-1)^(-m/2)` where the parity
    /// allows, logarithms as `log((z+1)/(z-1))` for second-kind functions.
    pub fn render(&self, form: &ExactForm) -> String {
        match form {
            ExactForm::Legendre(f) => {
                let style = match self.func {
                    Func::Q | Func::DQ | Func::W => LogStyle::Ratio,
                    _ => LogStyle::Half,
                };
                f.render(-(self.m() as i64), style)
            }
            ExactForm::Polynomial(p) => p.to_string(),
        }
    }

    /// Independent oracle values at a point; empty when none applies.
    pub fn oracles(&self, point: &Point, settings: &OracleSettings) -> Vec<Result<Eval, CliError>> {
        let o = self.order;
        let mu = o.m as i64 * o.sign.as_i32() as i64;
        let series = SeriesConfig {
            max_terms: settings.series_max_terms,
            ..SeriesConfig::default()
        };
        let est = |label: &str, r: legendre_dnu::error::Result<legendre_dnu::oracles::Estimate>| {
            r.map(|e| Eval {
                label: label.to_string(),
                value: e.value,
                err_est: Some(e.err_est),
            })
            .map_err(usage)
        };
        let mut out = Vec::new();
        match (self.func, point) {
            (Func::P, Point::Cut(z)) => {
                if (z.z() - 1.0).norm() < series.disc_limit {
                    out.push(est("series", p_series(o.n as f64, mu, z, &series)));
                }
            }
            (Func::P, Point::OnCut(x)) if x.side() == CutSide::Principal && x.x().abs() < 1.0 => {
                if (x.x() - 1.0).abs() < series.disc_limit {
                    out.push(
                        p_series_on_cut(o.n as f64, mu, x.x(), &series)
                            .map(|v| Eval {
                                label: "series".into(),
                                value: Complex64::new(v, 0.0),
                                err_est: None,
                            })
                            .map_err(usage),
                    );
                }
            }
            (Func::DP, Point::Cut(z)) => {
                let d = (z.z() - 1.0).norm();
                if d < FD_DISC {
                    out.push(est("fd", fd_dnu(o, z, FdOrder::First)));
                }
                if d < series.disc_limit {
                    out.push(est("series", dnu_series(o.n as f64, mu, z, &series)));
                    out.push(est("series_closed", dnu_series_closed(o.n, mu, z, &series)));
                }
                let cfg = ContourConfig {
                    radius: None,
                    nodes: settings.contour_nodes,
                };
                match contour_dnu(o, z, &cfg) {
                    Ok(v) => out.push(Ok(Eval {
                        label: "contour".into(),
                        value: v.value,
                        err_est: Some(v.err_est),
                    })),
                    Err(Error::Geometry(_)) => {}
                    Err(e) => out.push(Err(usage(e))),
                }
            }
            (Func::DP, Point::OnCut(x)) if x.side() == CutSide::Principal && x.x().abs() < 1.0 => {
                for form in OnCutClosedForm::ALL {
                    if form.admits(o.n, o.m) && form.order(o.n, o.m) == o {
                        let label = match form {
                            OnCutClosedForm::LowerOrder => "on_cut_lower_order",
                            OnCutClosedForm::UpperOrder => "on_cut_upper_order",
                            OnCutClosedForm::DegreeZero => "on_cut_degree_zero",
                        };
                        out.push(
                            on_cut_closed(form, o.n, o.m, x.x())
                                .map(|v| Eval {
                                    label: label.into(),
                                    value: Complex64::new(v, 0.0),
                                    err_est: None,
                                })
                                .map_err(usage),
                        );
                    }
                }
            }
            (Func::D2P, Point::Cut(z)) if (z.z() - 1.0).norm() < FD_DISC => {
                out.push(est("fd", fd_dnu(o, z, FdOrder::Second)));
            }
            _ => {}
        }
        out
    }
}

/// Parameters of the oracle engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub contour_nodes: usize,
    pub series_max_terms: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            contour_nodes: ContourConfig::default().nodes,
            series_max_terms: SeriesConfig::default().max_terms,
        }
    }
}
