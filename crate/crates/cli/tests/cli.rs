use std::path::Path;
use std::process::{Command, Output};

fn szego(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szego")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn error_code(out: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"]["code"].as_str().unwrap().to_owned()
}

#[test]
fn lebesgue_rule_from_flags() {
    let out = szego(&["rule", "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,theta,weight"));
    let rows: Vec<f64> = lines
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|h| (h - 0.25).abs() < 1e-14));
}

#[test]
fn validate_accepts_a_good_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"task":"zeros","n_max":5,"family":"f2"}"#);
    let out = szego(&["validate", &cfg]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "ok");
}

#[test]
fn missing_order_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"task":"rule"}"#);
    let out = szego(&["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "missing_field");
    assert!(String::from_utf8_lossy(&out.stderr).contains("`n`"));
}

#[test]
fn unknown_density_lists_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"task":"moments","n":3,"measure":{"variant":"density","density":{"name":"cauchy"}}}"#,
    );
    let out = szego(&["moments", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("von_mises"));
}

#[test]
fn task_mismatch_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"task":"rule","n":3}"#);
    let out = szego(&["schur", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "task_mismatch");
}

#[test]
fn measure_file_is_resolved_next_to_the_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "m.json", r#"{"variant":"atomic","atoms":[[0.3,1.0],[2.0,2.0]]}"#);
    let cfg = write(dir.path(), "c.json", r#"{"task":"schur","n":4,"measure":"m.json"}"#);
    let out = szego(&["schur", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_code(&out), "not_positive_definite");
    // one order is still fine
    let out = szego(&["schur", "--config", &cfg, "--n", "1"]);
    assert!(out.status.success());
}

#[test]
fn support_json_lists_arcs() {
    let out = szego(&[
        "support",
        "--n-max",
        "40",
        "--n-min",
        "20",
        "--epsilon",
        "0.2",
        "--anchor-angle",
        "0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // from order 20 on the Lebesgue zeros are closer than 2 epsilon
    let arcs = v["arcs"].as_array().unwrap();
    assert_eq!(arcs.len(), 1);
    assert_eq!(arcs[0][0].as_f64(), Some(0.0));
    assert!((arcs[0][1].as_f64().unwrap() - std::f64::consts::TAU).abs() < 1e-12);
}

#[test]
fn interlace_reports_pass_rows() {
    let out = szego(&["interlace", "--n-max", "6", "--omega0", "-1.0", "--family", "f2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")));
}
