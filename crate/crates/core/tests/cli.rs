use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qpicard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpicard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("json error on stderr");
    v["error"]["code"].as_str().unwrap().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qpicard-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn preimage_of_j_is_half_pi() {
    let v = json_stdout(&qpicard(&["preimage", "--target", "[0,0,1,0]"]));
    let q: Vec<f64> = serde_json::from_value(v["q"].clone()).unwrap();
    assert!((q[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert!(q[1..].iter().all(|x| x.abs() < 1e-12));
}

#[test]
fn preimage_on_the_slice_is_a_domain_error() {
    let out = qpicard(&["preimage", "--target", "[1,2,0,0]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "Unreachable");
}

#[test]
fn check5_rejects_flat_targets() {
    let out = qpicard(&["check5", "--targets", "[[0,0,0,0],[1,0,0,0],[0,1,0,0],[0,0,1,0],[1,1,0,0]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "NotGeneralPosition");
}

#[test]
fn monomial_check_default_basis() {
    let v = json_stdout(&qpicard(&["monomial-check", "--m", "[-1,0,0,0,0]"]));
    assert_eq!(v["verdict"]["type"], "non_vanishing");
    assert_eq!(v["verdict"]["degree"], -2);
    let a1 = v["alpha"][0].as_f64().unwrap();
    assert!((v["verdict"]["coefficient"].as_f64().unwrap() + a1 * a1).abs() < 1e-12);

    let v = json_stdout(&qpicard(&["monomial-check", "--m", "[0,0,0,0,0]", "--exact"]));
    assert_eq!(v["verdict"]["type"], "constant_curve");
    assert_eq!(v["exact"], true);
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec!["eval", "--q", "[1,2"],
        vec!["preimage", "--target", "[1,2,3]"],
        vec!["zeros", "--target", "[0,0,1,0]", "--rect", "[0,1,-1,1]"],
        vec!["avoid3", "--format", "csv", "--points", "[]"],
        vec!["no-such-command"],
    ] {
        let out = qpicard(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(v["error"]["code"].is_string());
        assert!(v["error"]["message"].is_string());
    }
}

#[test]
fn zero_alpha_is_a_domain_error() {
    let out = qpicard(&["monomial-check", "--m", "[1,0,0,0,0]", "--alpha", "[1,0,1,1,1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "InvalidAlpha");
}

#[test]
fn duplicate_points_are_a_domain_error() {
    let out = qpicard(&["avoid3", "--points", "[[0,0,0,0],[0,0,0,0],[1,0,0,0]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "DuplicatePoints");
}

#[test]
fn avoidance_report_round_trips_through_other_commands() {
    let report = scratch("avoid3.json");
    let out = qpicard(&[
        "avoid3",
        "--points",
        "[[1,0,2,0],[-1,1,0,1],[0,0,0,3]]",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let arg = format!("@{}", report.display());

    // a value off the avoided plane is attained
    let target = "[0.5,0.5,0.5,0.5]";
    let q = json_stdout(&qpicard(&["preimage", "--function", &arg, "--target", target]))["q"].clone();
    let value = json_stdout(&qpicard(&["eval", "--function", &arg, "--q", &q.to_string()]))["value"].clone();
    let value: Vec<f64> = serde_json::from_value(value).unwrap();
    for (a, b) in value.iter().zip([0.5, 0.5, 0.5, 0.5]) {
        assert!((a - b).abs() < 1e-9);
    }

    // the three avoided values are not
    for t in ["[1,0,2,0]", "[-1,1,0,1]", "[0,0,0,3]"] {
        let out = qpicard(&["preimage", "--function", &arg, "--target", t]);
        assert_eq!(out.status.code(), Some(1), "{t}");
    }

    // density scan excludes the report's plane automatically
    let v = json_stdout(&qpicard(&["density-scan", "--function", &arg, "--radius", "1.5", "--step", "0.5"]));
    assert_eq!(v["fraction"], 1.0);
    assert!(v["exclusion"].is_object());
}

#[test]
fn plane_avoider_and_check5_emit_reusable_functions() {
    let v = json_stdout(&qpicard(&["avoid-plane", "--p0", "[0,0,0,0]", "--u", "[1,0,0,0]", "--v", "[0,1,0,0]"]));
    let g = v["g"].to_string();
    let out = json_stdout(&qpicard(&["eval", "--function", &g, "--q", "[1.5707963267948966,0,0,0]"]));
    let val: Vec<f64> = serde_json::from_value(out["value"].clone()).unwrap();
    assert!((val[2] - 1.0).abs() < 1e-12);

    let file = scratch("check5.json");
    let targets = r#"{"targets":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1],[0,0,0,0]]}"#;
    let out = qpicard(&["check5", "--targets", targets, "--grid", "11", "--output", file.to_str().unwrap()]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(report["harness"]["stays_in_z"], true);
    assert_eq!(report["problem"]["M"][0][0], 1.0);
    let f = report["function"].to_string();
    json_stdout(&qpicard(&["zeros", "--function", &f, "--target", "[0,0,2,0]", "--rect", "[0,3,0,2]"]));
    // the problem summary is accepted as targets input
    let problem = report["problem"].to_string();
    json_stdout(&qpicard(&["check5", "--targets", &problem, "--grid", "5"]));
}

#[test]
fn zeros_json_and_csv() {
    let v = json_stdout(&qpicard(&["zeros", "--target", "[0,0,2,0]", "--rect", "[0,3,0,2]"]));
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert!((roots[0]["x"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    assert!((roots[0]["y"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-10);
    assert_eq!(roots[0]["fiber"]["type"], "point");

    let out = qpicard(&["zeros", "--target", "[0,0,2,0]", "--format", "csv", "--grid", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,abs_q");
    assert_eq!(lines.len(), 17);
}

#[test]
fn seeded_runs_are_deterministic() {
    let run = |seed: &str| qpicard(&["check5", "--seed", seed, "--grid", "5"]).stdout;
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
    let cert = |seed: &str| qpicard(&["monomial-check", "--m", "[1,2,0,0,1]", "--seed", seed]).stdout;
    assert_eq!(cert("3"), cert("3"));
}

#[test]
fn density_scan_is_monotone_in_step() {
    let frac = |step: &str| {
        json_stdout(&qpicard(&["density-scan", "--radius", "2", "--step", step]))["fraction"]
            .as_f64()
            .unwrap()
    };
    let coarse = frac("1");
    let fine = frac("0.5");
    assert_eq!(coarse, 1.0);
    assert!(fine >= coarse);
}

#[test]
fn help_exits_zero() {
    assert!(qpicard(&["--help"]).status.success());
    assert!(qpicard(&["density-scan", "--help"]).status.success());
}
