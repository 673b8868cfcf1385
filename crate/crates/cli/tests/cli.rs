use std::io::Write;
use std::process::{Command, Output};

use legendre_dnu_cli::report::{CheckReport, Row};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_legendre-dnu"));
    c.env_remove("LEGENDRE_DNU_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV output, header comment and column line removed.
fn records(o: &Output) -> Vec<csv::StringRecord> {
    let text = stdout(o);
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

fn column(o: &Output, name: &str) -> Vec<String> {
    let text = stdout(o);
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let idx = r.headers().unwrap().iter().position(|h| h == name).expect("column present");
    r.records().map(|rec| rec.unwrap()[idx].to_string()).collect()
}

#[test]
fn eval_supercritical_derivative_closed_form() {
    let o = run(&["eval", "--fn", "dP", "--n", "0", "--m", "1", "--sign", "+", "--z", "2,0", "--method", "C516"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = column(&o, "value_re")[0].parse().unwrap();
    assert!((v - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    assert_eq!(column(&o, "method"), ["C516"]);
}

#[test]
fn crosscheck_second_kind_all_methods_pass() {
    let o = run(&["crosscheck", "--fn", "Q", "--n", "1", "--m", "2", "--z", "2.5,0", "--method", "all", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<CheckReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert!(r.pass);
    assert_eq!(r.values.len(), 3);
    for v in &r.values {
        assert!((v.value_re - 2.0 / (2.5f64 * 2.5 - 1.0)).abs() < 1e-14, "{}", v.method);
    }
}

#[test]
fn first_kind_vanishes_above_the_degree() {
    let o = run(&["eval", "--fn", "P", "--n", "1", "--m", "2", "--sign", "+", "--z", "3,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&o, "value_re"), ["0"]);
    assert_eq!(column(&o, "value_im"), ["0"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vanishes"));
}

#[test]
fn exact_second_kind_uses_log_ratio() {
    let o = run(&["eval", "--fn", "Q", "--n", "1", "--m", "0", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let exact = &column(&o, "exact")[0];
    assert!(exact.contains("log((z+1)/(z-1))"), "{exact}");
    assert!(!exact.contains("log((z+1)/2)"), "{exact}");
}

#[test]
fn table_on_cut_grid_is_deterministic() {
    let args = ["table", "--fn", "dP", "--n", "2", "--m", "1", "--x-range=-0.5:0.5:0.5"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let rows = records(&a);
    let methods = 8 + 2;
    assert_eq!(rows.len(), 3 * methods);
    let xs = column(&a, "z_re");
    assert_eq!(xs[0], "-0.5");
    assert_eq!(xs[methods], "0");
    assert_eq!(xs[2 * methods], "0.5");
    let names = column(&a, "method");
    let mut sorted: Vec<_> = names[..methods].to_vec();
    sorted.sort_by_key(|s| s.parse::<legendre_dnu::method::MethodId>().unwrap());
    assert_eq!(names[..methods], sorted[..]);
    // every method gives the same value at each point
    let values = column(&a, "value_re");
    for chunk in values.chunks(methods) {
        let first: f64 = chunk[0].parse().unwrap();
        assert!(chunk.iter().all(|v| (v.parse::<f64>().unwrap() - first).abs() < 1e-12));
    }
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_rows_round_trip() {
    let o = run(&["eval", "--fn", "dP", "--n", "1", "--m", "0", "--z", "-0.3,1.4", "--z", "2,0", "--output", "json", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Row> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.len(), 2 * 10);
    let again = serde_json::to_string_pretty(&rows).unwrap();
    let back: Vec<Row> = serde_json::from_str(&again).unwrap();
    assert_eq!(rows, back);
    assert_eq!(rows[0].key.z_re, Some(-0.3));
}

#[test]
fn usage_errors_exit_with_two() {
    let w = run(&["eval", "--fn", "W", "--n", "1", "--m", "2", "--z", "2,0"]);
    assert_eq!(w.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&w.stderr).contains("0 <= m <= n"));
    let bad_method = run(&["eval", "--fn", "dP", "--n", "3", "--m", "1", "--z", "2,0", "--method", "C516"]);
    assert_eq!(bad_method.status.code(), Some(2));
    let on_cut = run(&["eval", "--fn", "P", "--n", "1", "--z", "0.5,0"]);
    assert_eq!(on_cut.status.code(), Some(2));
    let missing = run(&["eval", "--n", "1"]);
    assert_eq!(missing.status.code(), Some(2));
    let d2 = run(&["eval", "--fn", "d2P", "--n", "2", "--m", "1", "--z", "2,0"]);
    assert_eq!(d2.status.code(), Some(2));
}

#[test]
fn failing_check_exits_with_one() {
    let ok = run(&["oracle", "--fn", "dP", "--n", "2", "--m", "3", "--sign", "-", "--z", "1.4,0.3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(column(&ok, "pass"), ["true"]);
    let strict = run(&["oracle", "--fn", "dP", "--n", "2", "--m", "3", "--sign", "-", "--z", "1.4,0.3", "--oracle-tol", "0"]);
    assert_eq!(strict.status.code(), Some(1));
    assert_eq!(column(&strict, "pass"), ["false"]);
}

#[test]
fn exact_crosscheck_reports_gamma_residue() {
    let o = run(&[
        "crosscheck", "--fn", "dP", "--n", "3", "--m", "2", "--sign", "-", "--z", "0.4,0.9", "--mode", "exact", "--output", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<CheckReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports[0].gamma_residue, Some(0));
    assert_eq!(reports[0].exact_agree, Some(true));
}

#[test]
fn on_cut_oracle_uses_closed_forms() {
    let o = run(&["oracle", "--fn", "dP", "--n", "0", "--m", "1", "--sign", "-", "--x", "0.3@principal", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<CheckReport> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports[0].oracle.as_deref(), Some("on_cut_degree_zero"));
    assert!(reports[0].oracle_dev.unwrap() < 1e-12);
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# test defaults\noutput = json\nside = below").unwrap();
    let with_cfg = |args: &[&str]| bin().env("LEGENDRE_DNU_CONFIG", f.path()).args(args).output().unwrap();
    let o = with_cfg(&["eval", "--fn", "dQ", "--n", "0", "--m", "1", "--z", "2,0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Row> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[0].key.side, "below");
    let o = with_cfg(&["eval", "--fn", "dQ", "--n", "0", "--m", "1", "--z", "2,0", "--output", "csv", "--side", "above"]);
    assert_eq!(column(&o, "side"), ["above"]);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = red").unwrap();
    let o = bin().env("LEGENDRE_DNU_CONFIG", bad.path()).args(["eval", "--fn", "P", "--z", "2,0"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jacobi_exact_and_float_agree() {
    let o = run(&["eval", "--fn", "Jacobi", "--n", "2", "--alpha", "1", "--beta", "-2", "--z", "0.3,0.2", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<f64> = column(&o, "value_re").iter().map(|v| v.parse().unwrap()).collect();
    assert!(values.iter().all(|v| (v - values[0]).abs() < 1e-12));
    let exact = run(&["eval", "--fn", "dJacobi", "--n", "2", "--alpha", "1", "--beta", "-2", "--mode", "exact"]);
    assert_eq!(exact.status.code(), Some(0));
    let noninteger = run(&["eval", "--fn", "Jacobi", "--n", "2", "--alpha", "0.5", "--mode", "exact"]);
    assert_eq!(noninteger.status.code(), Some(2));
}
