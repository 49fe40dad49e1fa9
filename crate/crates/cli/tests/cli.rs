use std::process::{Command, Output};

use serde_json::Value;

fn qcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(args)
        .env_remove("QCALC_PRECISION_BITS")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_prints_csv_row() {
    let o = qcalc(&["eval", "hermite", "--N", "2", "--q", "2", "--x", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "function,value,terms_used,cancellation_digits,precision_bits\nhermite,6,2,0,256\n");
    let o = qcalc(&["eval", "e_q", "--x", "0", "--q", "2"]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("e_q,1,"));
}

#[test]
fn eval_accepts_negative_and_complex_arguments() {
    let o = qcalc(&["eval", "e_q", "--q", "2", "--x", "-2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("e_q,0,"));
    let o = qcalc(&["eval", "cosh_q", "--x", "0.5", "--im", "-1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["im"].is_string() && v["value"].as_str().unwrap().ends_with('i'));
}

#[test]
fn unit_base_is_the_classical_limit() {
    let o = qcalc(&["eval", "e_q", "--q", "1", "--x", "1", "--precision-bits", "64"]);
    assert_eq!(code(&o), 0);
    let value: f64 = stdout(&o).lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - std::f64::consts::E).abs() < 1e-15);
}

#[test]
fn json_eval_fields() {
    let o = qcalc(&["eval", "shock", "--k", "1,-1", "--offset", "10", "--q", "10", "--nu", "1", "--x", "3", "--t", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for field in ["function", "value", "terms_used", "cancellation_digits", "precision_bits"] {
        assert!(v.get(field).is_some(), "{field}");
    }
    assert!(v["value"].as_str().unwrap().parse::<f64>().unwrap().is_finite());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["eval", "e_q"],
        vec!["eval", "e_q", "--x", "1", "--N", "2"],
        vec!["eval", "e_q", "--x", "1", "--q", "1/2"],
        vec!["eval", "e_q", "--x", "1", "--q", "abc"],
        vec!["eval", "e_q", "--x", "1", "--precision-bits", "32"],
        vec!["verify", "heat", "--tolerance", "-1"],
        vec!["verify", "nope"],
        vec!["figure", "fig7"],
        vec!["bogus"],
    ] {
        let o = qcalc(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_two() {
    // e_q(-2) = 0 at q = 2, so the single wave has a pole there
    let o = qcalc(&["eval", "shock", "--q", "2", "--k", "1", "--x", "-2", "--t", "0"]);
    assert_eq!(code(&o), 2);
    let o = qcalc(&["eval", "ln_q", "--q", "2", "--x", "5"]);
    assert_eq!(code(&o), 2);
    let o = qcalc(&["similarity", "--q", "2", "--k=-1", "--window", "1,3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole"));
}

#[test]
fn verify_pass_and_fail() {
    let o = qcalc(&["verify", "hermite-identities", "--q", "2", "--Nmax", "20"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pass"], true);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["paper_ref"].is_string() && c["params"].is_object() && c["pass"] == true);
    }
    let o = qcalc(&["verify", "heat", "--tolerance", "1e-300"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL heat-plane-wave-residual"));
}

#[test]
fn verify_reports_calibrated_variants() {
    let o = qcalc(&["verify", "schrodinger", "--q", "10"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let variant = |name: &str| {
        report["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).unwrap()["variant"].clone()
    };
    assert_eq!(variant("madelung-variant-calibration"), "u-times-op-on-du/plain-time");
    assert_eq!(variant("schrodinger-hs-polynomial-residual"), "[N-2k]_q! k!");
}

#[test]
fn verify_csv_header() {
    let o = qcalc(&["verify", "kdf-identities", "--Nmax", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("check,paper_ref,residual_max,exact,pass,variant"));
}

#[test]
fn figure_is_deterministic_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let path_s = path.to_str().unwrap();
    let a = qcalc(&["figure", "fig2", "--precision-bits", "64", "--out", path_s]);
    assert_eq!(code(&a), 0);
    let first = std::fs::read(&path).unwrap();
    let b = qcalc(&["figure", "fig2", "--precision-bits", "64"]);
    assert_eq!(first, b.stdout);
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("x,u\n") && !text.contains('\r'));
    assert!(text.lines().any(|l| l == "0,0"));
    assert_eq!(text.lines().count(), 2002);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn figure_to_missing_directory_exits_two() {
    let o = qcalc(&["figure", "fig1", "--precision-bits", "64", "--out", "/nonexistent/dir/fig1.csv"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(["eval", "e_q", "--x", "1"])
        .env("QCALC_PRECISION_BITS", "128")
        .output()
        .unwrap();
    assert!(stdout(&o).trim_end().ends_with(",128"));
}

#[test]
fn similarity_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("profiles.csv");
    let o = qcalc(&[
        "similarity", "--q", "10", "--k", "1,-1,2,-2", "--t", "0", "--window", "5,50", "--m", "2", "--samples", "16",
        "--dump", dump.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let metric = v["metric"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&metric));
    let text = std::fs::read_to_string(dump).unwrap();
    assert!(text.starts_with("x,u,x_scaled,u_scaled\n"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn book_transcript_matches() {
    let chapter = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../book/src/cli.md")).unwrap();
    let block = chapter.split("```console\n").nth(1).unwrap().split("```").next().unwrap();
    let mut lines = block.lines().peekable();
    while let Some(line) = lines.next() {
        let Some(cmd) = line.strip_prefix("$ qcalc ") else { continue };
        let mut expected = String::new();
        while let Some(l) = lines.next_if(|l| !l.starts_with('$')) {
            expected.push_str(l);
            expected.push('\n');
        }
        if expected.is_empty() {
            continue;
        }
        let args: Vec<&str> = cmd.split_whitespace().collect();
        assert_eq!(stdout(&qcalc(&args)), expected, "{cmd}");
    }
}
