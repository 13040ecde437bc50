use std::path::Path;
use std::process::{Command, Output};

fn sir_series(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sir-series"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn solve_dtm_degree_four_listing() {
    let out = sir_series(&["solve", "--method", "dtm", "--degree", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# S(t) = 20 - 2.3 t + 0.15425 t^2 - 0.00790458 t^3 + 0.000309711 t^4\n"));
    assert!(text.contains("# I(t) = 15 - 2.2 t + 0.04575 t^2 + 0.00573792 t^3 - 0.000406169 t^4\n"));
    let rows = data_rows(&text);
    assert_eq!(rows[0], "method,k,S,I,R");
    assert_eq!(rows.len(), 6);
}

#[test]
fn solve_both_json_coefficients_agree() {
    let out = sir_series(&[
        "solve", "--method", "both", "--degree", "10", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for key in ["s", "i", "r"] {
        let a = reports[0]["coefficients"][key].as_array().unwrap();
        let b = reports[1]["coefficients"][key].as_array().unwrap();
        assert_eq!(a.len(), 11);
        for (x, y) in a.iter().zip(b) {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!((x - y).abs() <= 1e-12 * x.abs().max(y.abs()) || (x - y).abs() <= 1e-18);
        }
    }
    assert_eq!(reports[0]["order_label"], 11);
    assert_eq!(reports[1]["order_label"], 10);
}

#[test]
fn params_file_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("run.params");
    std::fs::write(&params, "# faster spread\nlambda = 0.002\nf1 = [1, 0.5]\n").unwrap();
    let target = dir.path().join("report.csv");
    let out = sir_series(&[
        "solve",
        "--method",
        "ladm",
        "--degree",
        "2",
        "--params",
        params.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    // S' = 1 + 0.5 t - 0.002*300 - 0.1*20 at t = 0 gives -1.6.
    assert!(text.contains("# S(t) = 20 - 1.6 t"), "{text}");
}

#[test]
fn invalid_params_report_line() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("bad.params");
    std::fs::write(&params, "lambda = 0.1\nepsilon = -1\n").unwrap();
    let out = sir_series(&["solve", "--params", params.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));

    std::fs::write(&params, "lambda 0.1\n").unwrap();
    let out = sir_series(&["solve", "--params", params.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = sir_series(&["solve", "--params", "/nonexistent/params.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn residual_default_grid_and_reference_columns() {
    let dir = tempfile::tempdir().unwrap();
    let hatm = dir.path().join("hatm.csv");
    std::fs::write(
        &hatm,
        "t,E_S,E_I,E_R\n0.2,1.16327e-5,1.3859e-5,1.95392e-6\n",
    )
    .unwrap();
    let out = sir_series(&[
        "residual",
        "--degree",
        "4",
        "--reference",
        hatm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows[0], "method,t,abs_E_S,abs_E_I,abs_E_R");
    assert_eq!(rows.iter().filter(|r| r.starts_with("dtm,")).count(), 6);
    assert_eq!(rows.iter().filter(|r| r.starts_with("ladm,")).count(), 6);
    assert_eq!(
        rows.iter().filter(|r| r.starts_with("reference,")).count(),
        1
    );

    let dtm_02: Vec<f64> = rows
        .iter()
        .find(|r| r.starts_with("dtm,2.0000000000000001e-1"))
        .unwrap()
        .split(',')
        .skip(1)
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((dtm_02[2] - 7.88132e-8).abs() / 7.88132e-8 < 1e-5);
}

#[test]
fn residual_explicit_times() {
    let out = sir_series(&["residual", "--method", "ladm", "--times", "0,0.5,1"]);
    assert!(out.status.success());
    assert_eq!(data_rows(&stdout(&out)).len(), 4);

    let out = sir_series(&["residual", "--times", "1,0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sir_series(&["residual", "--grid", "0:1:3", "--times", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn phase_grid_output() {
    let out = sir_series(&["phase", "--grid", "0:1:101"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 102);
    let first: Vec<f64> = rows[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 20.0, 15.0, 10.0]);
    assert!(text.contains("# method=ladm degree=10"));

    let out = sir_series(&["phase", "--grid", "0:0:1"]);
    assert_eq!(data_rows(&stdout(&out)).len(), 2);
}

#[test]
fn compare_exit_contract() {
    let ok = sir_series(&["compare"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("# overall: pass"));

    let fail = sir_series(&["compare", "--degree", "4", "--tol-oracle", "1e-9"]);
    assert_eq!(fail.status.code(), Some(2));
    let text = stdout(&fail);
    assert!(text.contains("oracle_deviation,dtm,"));
    assert!(text.contains(",fail"));

    let trivial = sir_series(&["compare", "--degree", "0", "--grid", "0:0:1"]);
    assert_eq!(trivial.status.code(), Some(0));

    let strict = sir_series(&["compare", "--degree", "10", "--tol-coeff", "0"]);
    assert!(matches!(strict.status.code(), Some(0) | Some(2)));
}

#[test]
fn divergence_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("explode.params");
    std::fs::write(&params, "lambda = 1000\nS0 = 1000\nI0 = 1000\n").unwrap();
    let out = sir_series(&[
        "compare",
        "--degree",
        "2",
        "--params",
        params.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(
        sir_series(&["solve", "--method", "hatm"]).status.code(),
        Some(1)
    );
    assert_eq!(
        sir_series(&["solve", "--degree", "-3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        sir_series(&["solve", "--degree", "500"]).status.code(),
        Some(1)
    );
    assert_eq!(sir_series(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(sir_series(&["--help"]).status.code(), Some(0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["solve", "--format", "json"][..],
        &["residual", "--grid", "0:1:11"][..],
        &["compare", "--format", "json"][..],
    ] {
        assert_eq!(sir_series(args).stdout, sir_series(args).stdout, "{args:?}");
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_sir-series")).exists());
}
