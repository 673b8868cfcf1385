//! Output records and their CSV and JSON serialisation.

use std::io::Write;

use clap::ValueEnum;
use legendre_dnu::legendre_p::OrderSpec;
use legendre_dnu::zdomain::{CutSide, Side};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::target::{Eval, Func, Point, Target};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Csv,
    Json,
}

/// Identifies the function and the point of a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Key {
    pub function: String,
    pub n: u32,
    /// Order, or `alpha` for Jacobi functions.
    pub m: String,
    /// `+`/`-`, or `beta` for Jacobi functions.
    pub sign: String,
    /// `Re z`, or `x` for on-cut points.
    pub z_re: Option<f64>,
    /// `Im z`; empty for on-cut points.
    pub z_im: Option<f64>,
    /// `above`/`below` for real `z > 1`, or the on-cut side.
    pub side: String,
}

impl Key {
    pub fn new(t: &Target, point: Option<&Point>) -> Self {
        let (m, sign) = match t.func {
            Func::Jacobi | Func::DJacobi => (format!("{}", t.alpha), format!("{}", t.beta)),
            _ => (t.order.m.to_string(), t.order.sign.to_string()),
        };
        let function = match (t.func, t.at) {
            (Func::Q | Func::DQ, legendre_dnu::legendre_q::DegreePoint::MinusNMinus1) => format!("{}@{}", t.func, t.at),
            _ => t.func.to_string(),
        };
        let (z_re, z_im, side) = match point {
            None => (None, None, t.side.to_string()),
            Some(Point::Cut(z)) => (Some(z.re()), Some(z.im()), z.side(t.side).to_string()),
            Some(Point::OnCut(x)) => (Some(x.x()), None, cut_side_name(x.side()).to_string()),
        };
        Self {
            function,
            n: t.order.n,
            m,
            sign,
            z_re,
            z_im,
            side,
        }
    }
}

fn cut_side_name(s: CutSide) -> &'static str {
    match s {
        CutSide::Above => "above",
        CutSide::Below => "below",
        CutSide::Principal => "principal",
    }
}

/// One value row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(flatten)]
    pub key: Key,
    pub method: String,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub err_est: Option<f64>,
    /// Exact form text, in exact mode.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
}

impl Row {
    pub fn new(key: Key, e: &Eval, exact: Option<String>) -> Self {
        Self {
            key,
            method: e.label.clone(),
            value_re: Some(e.value.re),
            value_im: Some(e.value.im),
            err_est: e.err_est,
            exact,
        }
    }

    pub fn symbolic(key: Key, method: String, exact: String) -> Self {
        Self {
            key,
            method,
            value_re: None,
            value_im: None,
            err_est: None,
            exact: Some(exact),
        }
    }
}

/// A value reported inside a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: String,
    pub value_re: f64,
    pub value_im: f64,
    pub err_est: Option<f64>,
}

impl From<&Eval> for MethodValue {
    fn from(e: &Eval) -> Self {
        Self {
            method: e.label.clone(),
            value_re: e.value.re,
            value_im: e.value.im,
            err_est: e.err_est,
        }
    }
}

/// Outcome of comparing representations (and oracles) at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub key: Key,
    pub values: Vec<MethodValue>,
    /// Largest pairwise deviation between the method values.
    pub max_rel_dev: f64,
    /// Names of the oracles compared against, `;`-separated.
    pub oracle: Option<String>,
    /// Largest deviation of an oracle from the first method value.
    pub oracle_dev: Option<f64>,
    /// Whether all exact forms coincide (exact mode).
    pub exact_agree: Option<bool>,
    /// Number of coefficients carrying Euler's γ (exact mode).
    pub gamma_residue: Option<usize>,
    pub pass: bool,
}

/// `|a-b| / max(|a|, |b|, 1)`: relative for large values, absolute near zero.
pub fn deviation(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Largest pairwise deviation.
pub fn max_pairwise(values: &[Complex64]) -> f64 {
    values
        .iter()
        .enumerate()
        .flat_map(|(i, a)| values[i + 1..].iter().map(move |b| deviation(*a, *b)))
        .fold(0.0, f64::max)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn key_fields(k: &Key) -> Vec<String> {
    vec![
        k.function.clone(),
        k.n.to_string(),
        k.m.clone(),
        k.sign.clone(),
        opt(&k.z_re),
        opt(&k.z_im),
        k.side.clone(),
    ]
}

const KEY_HEADER: [&str; 7] = ["function", "n", "m", "sign", "z_re", "z_im", "side"];

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(format!("output: {e}"))
}

/// Writes value rows; `header` lines become `#` comments.
pub fn write_rows(out: &mut dyn Write, format: Output, header: &str, rows: &[Row], exact: bool) -> Result<(), CliError> {
    match format {
        Output::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(csv_error)?;
            writeln!(out).map_err(csv_error)
        }
        Output::Csv => {
            writeln!(out, "# {header}").map_err(csv_error)?;
            let mut w = csv::Writer::from_writer(out);
            let mut head: Vec<&str> = KEY_HEADER.to_vec();
            head.extend(["method", "value_re", "value_im", "err_est"]);
            if exact {
                head.push("exact");
            }
            w.write_record(&head).map_err(csv_error)?;
            for r in rows {
                let mut rec = key_fields(&r.key);
                rec.extend([r.method.clone(), opt(&r.value_re), opt(&r.value_im), opt(&r.err_est)]);
                if exact {
                    rec.push(r.exact.clone().unwrap_or_default());
                }
                w.write_record(&rec).map_err(csv_error)?;
            }
            w.flush().map_err(csv_error)
        }
    }
}

/// Writes check reports, one CSV row per point.
pub fn write_reports(out: &mut dyn Write, format: Output, header: &str, reports: &[CheckReport]) -> Result<(), CliError> {
    match format {
        Output::Json => {
            serde_json::to_writer_pretty(&mut *out, reports).map_err(csv_error)?;
            writeln!(out).map_err(csv_error)
        }
        Output::Csv => {
            writeln!(out, "# {header}").map_err(csv_error)?;
            let mut w = csv::Writer::from_writer(out);
            let mut head: Vec<&str> = KEY_HEADER.to_vec();
            head.extend([
                "methods",
                "value_re",
                "value_im",
                "max_rel_dev",
                "oracle",
                "oracle_dev",
                "exact_agree",
                "gamma_residue",
                "pass",
            ]);
            w.write_record(&head).map_err(csv_error)?;
            for r in reports {
                let mut rec = key_fields(&r.key);
                let first = r.values.first();
                rec.extend([
                    r.values.iter().map(|v| v.method.as_str()).collect::<Vec<_>>().join(";"),
                    opt(&first.map(|v| v.value_re)),
                    opt(&first.map(|v| v.value_im)),
                    r.max_rel_dev.to_string(),
                    opt(&r.oracle),
                    opt(&r.oracle_dev),
                    opt(&r.exact_agree),
                    opt(&r.gamma_residue),
                    r.pass.to_string(),
                ]);
                w.write_record(&rec).map_err(csv_error)?;
            }
            w.flush().map_err(csv_error)
        }
    }
}

/// Header comment describing a request.
pub fn header(command: &str, t: &Target, method: &str, mode: Mode) -> String {
    let o: OrderSpec = t.order;
    let side = match t.side {
        Side::Above => "above",
        Side::Below => "below",
    };
    format!(
        "legendre-dnu {} {command} fn={} n={} m={} sign={} method={method} mode={} real_side={side}",
        env!("CARGO_PKG_VERSION"),
        t.func,
        o.n,
        o.m,
        o.sign,
        match mode {
            Mode::Float => "float",
            Mode::Exact => "exact",
        }
    )
}
