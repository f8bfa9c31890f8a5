use std::path::Path;
use std::process::{Command, Output};

use fdmono_core::exactfield::parse_ratfunc;
use fdmono_core::monodromy::{section7_golden, MatricesJson};
use fdmono_core::VerificationReport;
use tempfile::TempDir;

const GENERIC_M1: &str = r#"{"m": 1, "alphas": [
    {"type": "symbolic", "lambda": "a"},
    {"type": "symbolic", "lambda": "b"},
    {"type": "symbolic", "lambda": "c"},
    {"type": "symbolic", "lambda": "a^-1*b^-1*c^-1"}]}"#;

const SECTION7: &str = r#"{"m": 3, "alphas": [
    {"type": "integral", "value": 0},
    {"type": "integral", "value": 0},
    {"type": "symbolic", "lambda": "s"},
    {"type": "symbolic", "lambda": "s^-1"},
    {"type": "symbolic", "lambda": "u"},
    {"type": "symbolic", "lambda": "u^-1"}]}"#;

const SCENE: &str = r#"{"alphas": [-0.7, -0.3, -0.4, 0.6, 0.8], "x": [0.3, 0.6], "shift": "hat"}"#;

fn fdmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdmono")).args(args).env_remove("FDMONO_QUAD_TOL").output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn section7_matches_table() {
    let o = fdmono(&["section7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count(), 18);
    assert!(text.contains("M02 ="));
}

#[test]
fn section7_json_round_trips() {
    let o = fdmono(&["section7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs: Vec<MatricesJson> = serde_json::from_value(v["matrices"].clone()).unwrap();
    let report: VerificationReport = serde_json::from_value(v["report"].clone()).unwrap();
    assert!(report.passed());
    for (g, m, n) in section7_golden() {
        let got = pairs.iter().find(|p| p.pair == [g.p, g.q]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(&parse_ratfunc(&got.m[i][j]).unwrap(), m.get(i, j));
                assert_eq!(&parse_ratfunc(&got.n[i][j]).unwrap(), n.get(i, j));
            }
        }
    }
}

#[test]
fn matrices_json_for_pair() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", SECTION7);
    let o = fdmono(&["matrices", "--params", &p, "--pair", "0,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let mj: MatricesJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(mj.pair, [0, 2]);
    assert_eq!(parse_ratfunc(&mj.m[0][0]).unwrap(), parse_ratfunc("s").unwrap());
    assert_eq!(parse_ratfunc(&mj.n[0][2]).unwrap(), parse_ratfunc("(s-1)/s").unwrap());
}

#[test]
fn word_of_generator_and_inverse_is_identity() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", GENERIC_M1);
    for side in ["M", "N"] {
        let o = fdmono(&["word", "--params", &p, "--word", "01,01^-1", "--side", side, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let rows: Vec<Vec<String>> = serde_json::from_value(v["matrix"].clone()).unwrap();
        assert_eq!(rows, vec![vec!["1", "0"], vec!["0", "1"]]);
    }
}

#[test]
fn verify_is_deterministic_and_passes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", GENERIC_M1);
    let a = fdmono(&["verify", "--params", &p, "--suite", "all", "--seed", "7"]);
    let b = fdmono(&["verify", "--params", &p, "--suite", "all", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("# seed = 7\n"));
}

#[test]
fn numeric_verify_passes_and_fails_on_tolerance() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "scene.json", SCENE);
    let o = fdmono(&["numeric-verify", "--config", &c, "--pairs", "1,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.checks.len(), 2);
    let o = fdmono(&["numeric-verify", "--config", &c, "--pairs", "1,2", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn quad_tol_variable_is_applied_and_validated() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "scene.json", SCENE);
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_fdmono"))
            .args(["numeric-verify", "--config", &c, "--pairs", "0,1"])
            .env("FDMONO_QUAD_TOL", tol)
            .output()
            .unwrap()
    };
    let o = run("1e-9");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("quad tol = 1e-9"));
    assert_eq!(run("-1").status.code(), Some(2));
    assert_eq!(run("abc").status.code(), Some(2));
}

#[test]
fn euler_check_text_and_json() {
    let o = fdmono(&["euler-check", "--a", "0.5", "--b", "0.3,-0.2", "--c", "1.7", "--x", "0.4,-0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fdmono(&["euler-check", "--a", "0.5", "--b", "0.3", "--c", "1.7", "--x", "0.4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["comparison"]["rel_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    let missing = missing.to_str().unwrap();
    let bad_sum = write(&dir, "bad.json", &GENERIC_M1.replace("a^-1*b^-1*c^-1", "a^-1"));
    let good = write(&dir, "p.json", GENERIC_M1);
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--params", missing],
        vec!["verify", "--params", &bad_sum],
        vec!["verify", "--params", &good, "--suite", "nope"],
        vec!["matrices", "--params", &good, "--pair", "0,2"],
        vec!["matrices", "--params", &good, "--pair", "0"],
        vec!["word", "--params", &good, "--word", "0x", "--side", "M"],
        vec!["section7", "--unknown"],
        vec!["euler-check", "--a", "0.5", "--b", "0.3", "--c", "0.2", "--x", "0.4"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = fdmono(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    assert!(Path::new(&good).exists());
}
