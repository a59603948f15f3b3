use std::process::{Command, Output};

use serde_json::Value;

fn skewgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewgeo")).args(args).env_clear().output().unwrap()
}

fn skewgeo_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_skewgeo"));
    cmd.args(args).env_clear();
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn entry(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn construct_quadric_prints_base_point_and_tangents() {
    let out = skewgeo(&["construct", "q3-sphere", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let z = &v["base_point"];
    let close = |got: (f64, f64), want: (f64, f64)| (got.0 - want.0).abs() < 1e-15 && (got.1 - want.1).abs() < 1e-15;
    assert!(close(entry(&z[0][1]), (0.5, 0.0)));
    assert!(close(entry(&z[0][2]), (0.0, 0.5)));
    assert!(close(entry(&z[2][0]), (0.0, 0.5)));
    assert!(close(entry(&z[1][1]), (0.0, 0.0)));
    let y1 = &v["y1"];
    let (re, im) = entry(&y1[1][2]);
    assert!(re.abs() < 1e-15 && (im + 0.5).abs() < 1e-15);
    let y2 = &v["y2"];
    let (re, im) = entry(&y2[2][2]);
    assert!(re.abs() < 1e-15 && (im + 1.0).abs() < 1e-15);
    assert_eq!(v["isotropy_dim"], 1);
    assert_eq!(v["orbit_dim"], 2);
    assert_eq!(v["tangent_basis"].as_array().unwrap().len(), 2);

    let text = skewgeo(&["construct", "q3-sphere"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("Z0:") && text.contains("Y1:") && text.contains("Y2:"));
}

#[test]
fn construct_quaternionic_reports_v1() {
    let out = skewgeo(&["construct", "g2h7-hp2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.contains("\"dim_V1\": 14"));
    let v = json(&out);
    assert_eq!(v["kappa_rank"], 6);
    assert_eq!(v["isotropy_dim"], 13);
    assert_eq!(v["orbit_dim"], 8);
}

#[test]
fn unknown_construction_is_a_usage_error() {
    let out = skewgeo(&["construct", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    assert_eq!(skewgeo(&["certify", "bogus"]).status.code(), Some(2));
    assert_eq!(skewgeo(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn invalid_options_are_usage_errors() {
    assert_eq!(skewgeo(&["certify", "q3-sphere", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(skewgeo(&["certify", "q3-sphere", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(skewgeo(&["certify", "q3-sphere", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(skewgeo(&["certify", "q3-sphere", "--perturb", "wobble"]).status.code(), Some(2));
    assert_eq!(skewgeo(&["--help"]).status.code(), Some(0));
}

#[test]
fn certify_exit_codes() {
    assert_eq!(skewgeo(&["certify", "q3-sphere", "--seed", "7"]).status.code(), Some(0));
    assert_eq!(skewgeo(&["certify", "g2c6-cp2", "--tol", "1e-30"]).status.code(), Some(1));
    let out = skewgeo(&["certify", "q3-sphere", "--perturb", "base-point", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["perturbation"]["kind"], "base-point");
    assert_eq!(v["pass"], false);
}

#[test]
fn certify_all_reports_in_order_with_worst_exit() {
    let out = skewgeo(&["certify", "all", "--format", "json", "--samples", "20", "--directions", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<_> = v.as_array().unwrap().iter().map(|r| r["construction"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["q3-sphere", "g2c6-cp2", "g2h7-hp2"]);

    let out = skewgeo(&["certify", "all", "--tol", "1e-30", "--samples", "5", "--directions", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("construction ").count(), 3);
}

#[test]
fn report_schema() {
    let v = json(&skewgeo(&["certify", "g2c6-cp2", "--format", "json", "--samples", "10", "--directions", "1"]));
    for key in ["construction", "checks", "pass", "seed", "versions", "samples", "tolerances", "angle_census", "notes"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["seed"], 7);
    assert!(v["versions"]["skewgeo-core"].is_string());
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "measured", "tolerance", "pass", "bound"] {
            assert!(c.get(key).is_some(), "check missing {key}");
        }
    }
}

#[test]
fn flags_override_environment() {
    let args = ["certify", "q3-sphere", "--format", "json", "--samples", "10", "--directions", "1"];
    let v = json(&skewgeo_env(&args, &[("SKEWGEO_SEED", "99")]));
    assert_eq!(v["seed"], 99);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "3"]);
    let v = json(&skewgeo_env(&with_flag, &[("SKEWGEO_SEED", "99")]));
    assert_eq!(v["seed"], 3);

    let out = skewgeo_env(
        &["certify", "q3-sphere", "--samples", "10", "--directions", "1"],
        &[("SKEWGEO_FORMAT", "json"), ("SKEWGEO_TOL", "1e-30")],
    );
    assert_eq!(out.status.code(), Some(1));
    let angle_tol = json(&out)["tolerances"]["angle"].as_f64().unwrap();
    assert!((angle_tol / 1e-30 - 1.0).abs() < 1e-12);
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out =
        skewgeo(&["certify", "q3-sphere", "--format", "json", "--samples", "10", "--directions", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["construction"], "q3-sphere");

    let missing = dir.path().join("no/such/dir/report.json");
    let out = skewgeo(&["certify", "q3-sphere", "--samples", "5", "--directions", "1", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn branch_summary() {
    let out = skewgeo(&["branch", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vc_dim"], 6);
    assert_eq!(v["so3_components"], serde_json::json!([1, 5]));
    assert!(v["su3_intertwiner_condition"].as_f64().unwrap() < 1e6);
    assert!(v["so3_intertwiner_condition"].as_f64().unwrap() < 1e6);
    assert_eq!(v["pass"], true);
}

#[test]
fn json_is_byte_stable() {
    let args = ["certify", "g2h7-hp2", "--format", "json", "--samples", "20", "--directions", "2"];
    assert_eq!(skewgeo(&args).stdout, skewgeo(&args).stdout);
}
