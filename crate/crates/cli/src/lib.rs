//! Command-line front end for `legendre-dnu`: single evaluations, tables,
//! cross-checks between representations and comparisons with the oracles.

pub mod config;
pub mod report;
pub mod target;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use legendre_dnu::legendre_p::{OrderSpec, Sign};
use legendre_dnu::legendre_q::DegreePoint;
use legendre_dnu::method::MethodId;
use legendre_dnu::zdomain::{CutPoint, CutSide, OnCutPoint, Side};
use rayon::prelude::*;

use config::Config;
use report::{deviation, max_pairwise, CheckReport, Key, MethodValue, Mode, Output, Row};
use target::{Eval, ExactForm, Func, OracleSettings, Point, Target};

/// Errors that end a run, mapped to exit codes 2 and 1.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    /// The representation does not apply to this request.
    #[error("{0}")]
    NotApplicable(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::NotApplicable(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "legendre-dnu", version, about = "Degree derivatives of associated Legendre functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate at the given points.
    Eval(EvalArgs),
    /// Evaluate over a grid, one row per point and method.
    Table(TableArgs),
    /// Compare every representation at each point.
    Crosscheck(CheckArgs),
    /// Compare the library value with the independent oracles.
    Oracle(CheckArgs),
}

/// How the method is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSel {
    Auto,
    All,
    One(MethodId),
}

fn parse_method(s: &str) -> Result<MethodSel, String> {
    match s.to_ascii_lowercase().as_str() {
        "auto" => Ok(MethodSel::Auto),
        "all" => Ok(MethodSel::All),
        _ => s.parse().map(MethodSel::One).map_err(|e| e.to_string()),
    }
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse()
}

fn parse_degree_point(s: &str) -> Result<DegreePoint, String> {
    match s {
        "plus_n" | "n" => Ok(DegreePoint::PlusN),
        "minus_n_minus_1" | "-n-1" => Ok(DegreePoint::MinusNMinus1),
        other => Err(format!("unknown degree point `{other}` (plus_n or minus_n_minus_1)")),
    }
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: legendre_dnu::zdomain::DomainError| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Function: P, dP, d2P, Q, dQ, W, Jacobi, dJacobi.
    #[arg(long = "fn", value_enum, ignore_case = true)]
    pub func: Func,
    /// Degree.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Order magnitude.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Order sign, `+` or `-`.
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    pub sign: Sign,
    /// Degree for Q and dQ: `plus_n` or `minus_n_minus_1`.
    #[arg(long, default_value = "plus_n", value_parser = parse_degree_point, allow_hyphen_values = true)]
    pub at: DegreePoint,
    /// Jacobi parameter alpha.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Jacobi parameter beta.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Point off the cut, `re,im`; repeatable.
    #[arg(long = "z", allow_hyphen_values = true)]
    pub z: Vec<CutPoint>,
    /// Point on [-1, 1], `x@principal`, `x@above` or `x@below`; repeatable.
    #[arg(long = "x", allow_hyphen_values = true)]
    pub x: Vec<OnCutPoint>,
    /// `auto`, `all` or a method identifier.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<MethodSel>,
    #[arg(long, value_enum, ignore_case = true)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum, ignore_case = true)]
    pub output: Option<Output>,
    /// Side for real z > 1: `above` or `below`.
    #[arg(long, value_parser = parse_side)]
    pub side: Option<Side>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
    /// Real parts `start:stop:step` of a grid off the cut.
    #[arg(long, allow_hyphen_values = true)]
    pub re: Option<String>,
    /// Imaginary parts `start:stop:step`; defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    pub im: Option<String>,
    /// On-cut abscissae `start:stop:step`.
    #[arg(long = "x-range", allow_hyphen_values = true)]
    pub x_range: Option<String>,
    /// Side for `--x-range` points.
    #[arg(long = "cut-side", default_value = "principal")]
    pub cut_side: String,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest accepted pairwise deviation between methods.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest accepted deviation from an oracle.
    #[arg(long = "oracle-tol")]
    pub oracle_tol: Option<f64>,
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("range `{s}` must be start:stop:step with step > 0"));
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match parts[..] {
        [a] => Ok(vec![a]),
        [a, b, step] if step > 0.0 && b >= a => {
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(bad());
            }
            Ok((0..count).map(|i| a + step * i as f64).collect())
        }
        _ => Err(bad()),
    }
}

struct Resolved {
    target: Target,
    points: Vec<Point>,
    method: MethodSel,
    mode: Mode,
    output: Output,
}

fn resolve(c: &Common, cfg: &Config, default_method: MethodSel) -> Result<Resolved, CliError> {
    let target = Target {
        func: c.func,
        order: OrderSpec::new(c.n, c.m, c.sign),
        at: c.at,
        alpha: c.alpha,
        beta: c.beta,
        side: c.side.unwrap_or(cfg.side),
    };
    target.validate()?;
    let points = c
        .z
        .iter()
        .map(|&z| Point::Cut(z))
        .chain(c.x.iter().map(|&x| Point::OnCut(x)))
        .collect();
    Ok(Resolved {
        target,
        points,
        method: c.method.unwrap_or(default_method),
        mode: c.mode.unwrap_or(cfg.mode),
        output: c.output.unwrap_or(cfg.output),
    })
}

fn method_label(m: MethodSel) -> String {
    match m {
        MethodSel::Auto => "auto".into(),
        MethodSel::All => "all".into(),
        MethodSel::One(id) => id.name().into(),
    }
}

/// Methods to run; `None` stands for the automatic choice.
fn selected(t: &Target, sel: MethodSel) -> Vec<Option<MethodId>> {
    match sel {
        MethodSel::Auto => vec![None],
        MethodSel::One(id) => vec![Some(id)],
        MethodSel::All => {
            let all = t.methods();
            if all.is_empty() {
                vec![None]
            } else {
                all.into_iter().map(Some).collect()
            }
        }
    }
}

/// Under `all`, drops representations that do not apply to the request.
fn keep_applicable<T>(sel: MethodSel, results: Vec<Result<T, CliError>>) -> Result<Vec<T>, CliError> {
    let mut kept = Vec::new();
    let mut skipped = None;
    for r in results {
        match r {
            Err(e @ CliError::NotApplicable(_)) if sel == MethodSel::All => skipped = Some(e),
            other => kept.push(other?),
        }
    }
    match (kept.is_empty(), skipped) {
        (true, Some(e)) => Err(e),
        _ => Ok(kept),
    }
}

fn exact_side(t: &Target, point: Option<&Point>) -> Side {
    match point {
        Some(Point::Cut(z)) => z.side(t.side),
        _ => t.side,
    }
}

fn rows_at(r: &Resolved, point: Option<&Point>) -> Result<Vec<Row>, CliError> {
    let t = &r.target;
    let key = Key::new(t, point);
    let rows = selected(t, r.method)
        .into_iter()
        .map(|method| {
            let exact = match r.mode {
                Mode::Exact => Some(t.render(&t.exact(method, exact_side(t, point))?)),
                Mode::Float => None,
            };
            match point {
                Some(p) => Ok(Row::new(key.clone(), &t.evaluate(p, method)?, exact)),
                None => {
                    let label = method.or_else(|| t.auto(None)).map_or("zero".into(), |m| m.name().to_string());
                    Ok(Row::symbolic(key.clone(), label, exact.unwrap_or_default()))
                }
            }
        })
        .collect();
    keep_applicable(r.method, rows)
}

fn all_rows(r: &Resolved) -> Result<Vec<Row>, CliError> {
    if r.points.is_empty() {
        if r.mode == Mode::Exact {
            return rows_at(r, None);
        }
        return Err(CliError::Usage("give at least one point with --z or --x (or use --mode exact)".into()));
    }
    let per_point: Vec<Result<Vec<Row>, CliError>> = r.points.par_iter().map(|p| rows_at(r, Some(p))).collect();
    let mut rows = Vec::new();
    for chunk in per_point {
        rows.extend(chunk?);
    }
    Ok(rows)
}

fn check_at(
    r: &Resolved,
    point: &Point,
    tol: f64,
    oracle_tol: f64,
    settings: &OracleSettings,
    oracle_only: bool,
) -> Result<CheckReport, CliError> {
    let t = &r.target;
    let candidates = if oracle_only { vec![None] } else { selected(t, r.method) };
    let evaluated = candidates.iter().map(|&m| t.evaluate(point, m).map(|e| (m, e))).collect();
    let (methods, mut values): (Vec<Option<MethodId>>, Vec<Eval>) =
        keep_applicable(r.method, evaluated)?.into_iter().unzip();
    let max_rel_dev = max_pairwise(&values.iter().map(|e| e.value).collect::<Vec<_>>());
    let oracles: Vec<Eval> = t.oracles(point, settings).into_iter().collect::<Result<_, _>>()?;
    if oracle_only && oracles.is_empty() {
        return Err(CliError::Usage(format!("no oracle applies to {} at this point", t.func)));
    }
    let reference = values[0].value;
    let oracle_dev = (!oracles.is_empty()).then(|| {
        oracles
            .iter()
            .map(|o| deviation(o.value, reference))
            .fold(0.0, f64::max)
    });
    let oracle = (!oracles.is_empty()).then(|| oracles.iter().map(|o| o.label.as_str()).collect::<Vec<_>>().join(";"));
    let (exact_agree, gamma_residue) = match r.mode {
        Mode::Float => (None, None),
        Mode::Exact => {
            let side = exact_side(t, Some(point));
            let forms: Vec<ExactForm> = methods.iter().map(|&m| t.exact(m, side)).collect::<Result<_, _>>()?;
            let agree = forms.windows(2).all(|w| w[0] == w[1]);
            (Some(agree), Some(forms.iter().map(ExactForm::gamma_residue).sum()))
        }
    };
    let pass = max_rel_dev <= tol
        && oracle_dev.is_none_or(|d| d <= oracle_tol)
        && exact_agree.unwrap_or(true)
        && gamma_residue.is_none_or(|g| g == 0);
    values.extend(oracles);
    Ok(CheckReport {
        key: Key::new(t, Some(point)),
        values: values.iter().map(MethodValue::from).collect(),
        max_rel_dev,
        oracle,
        oracle_dev,
        exact_agree,
        gamma_residue,
        pass,
    })
}

fn run_check(a: &CheckArgs, cfg: &Config, oracle_only: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let default = if oracle_only { MethodSel::Auto } else { MethodSel::All };
    let r = resolve(&a.common, cfg, default)?;
    if r.points.is_empty() {
        return Err(CliError::Usage("give at least one point with --z or --x".into()));
    }
    let tol = a.tol.unwrap_or(cfg.tolerance);
    let oracle_tol = a.oracle_tol.unwrap_or(cfg.oracle_tolerance);
    let settings = OracleSettings {
        contour_nodes: cfg.contour_nodes,
        series_max_terms: cfg.series_max_terms,
    };
    let reports: Vec<CheckReport> = r
        .points
        .par_iter()
        .map(|p| check_at(&r, p, tol, oracle_tol, &settings, oracle_only))
        .collect::<Result<_, _>>()?;
    let command = if oracle_only { "oracle" } else { "crosscheck" };
    let head = format!(
        "{} tol={tol:e} oracle_tol={oracle_tol:e}",
        report::header(command, &r.target, &method_label(r.method), r.mode)
    );
    report::write_reports(out, r.output, &head, &reports)?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn table_points(a: &TableArgs) -> Result<Vec<Point>, CliError> {
    let mut points = Vec::new();
    if let Some(re) = &a.re {
        let ims = a.im.as_deref().map_or(Ok(vec![0.0]), parse_range)?;
        for x in parse_range(re)? {
            for &y in &ims {
                let z = CutPoint::new(x, y).map_err(|e| CliError::Usage(e.to_string()))?;
                points.push(Point::Cut(z));
            }
        }
    }
    if let Some(xs) = &a.x_range {
        let side = match a.cut_side.as_str() {
            "principal" => CutSide::Principal,
            "above" => CutSide::Above,
            "below" => CutSide::Below,
            other => return Err(CliError::Usage(format!("unknown cut side `{other}`"))),
        };
        for x in parse_range(xs)? {
            let p = OnCutPoint::new(x, side).map_err(|e| CliError::Usage(e.to_string()))?;
            points.push(Point::OnCut(p));
        }
    }
    Ok(points)
}

fn dispatch(cli: &Cli, cfg: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let common = match &cli.command {
        Command::Eval(a) => &a.common,
        Command::Table(a) => &a.common,
        Command::Crosscheck(a) | Command::Oracle(a) => &a.common,
    };
    let probe = resolve(common, cfg, MethodSel::Auto)?;
    if let Some(note) = probe.target.note() {
        let _ = writeln!(err, "{note}");
    }
    match &cli.command {
        Command::Eval(a) => {
            let r = resolve(&a.common, cfg, MethodSel::Auto)?;
            let rows = all_rows(&r)?;
            let head = report::header("eval", &r.target, &method_label(r.method), r.mode);
            report::write_rows(out, r.output, &head, &rows, r.mode == Mode::Exact)?;
            Ok(0)
        }
        Command::Table(a) => {
            let mut r = resolve(&a.common, cfg, MethodSel::All)?;
            r.points.extend(table_points(a)?);
            let rows = all_rows(&r)?;
            let head = report::header("table", &r.target, &method_label(r.method), r.mode);
            report::write_rows(out, r.output, &head, &rows, r.mode == Mode::Exact)?;
            Ok(0)
        }
        Command::Crosscheck(a) => run_check(a, cfg, false, out),
        Command::Oracle(a) => run_check(a, cfg, true, out),
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = Config::from_env().and_then(|cfg| dispatch(cli, &cfg, out, err));
    match result {
        Ok(code) => code,
        Err(e) => {
            let kind = match e {
                CliError::Usage(_) | CliError::NotApplicable(_) => "usage error",
                CliError::Failed(_) => "error",
            };
            let _ = writeln!(err, "{kind}: {e}");
            e.exit_code()
        }
    }
}
