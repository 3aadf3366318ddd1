use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlpencil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

/// `P(z) = [1, z^2]`.
fn row() -> String {
    write(
        "row.json",
        r#"{"m":1,"n":2,"grade":2,"coeffs":[[["1","0"]],[["0","0"]],[["0","1"]]]}"#,
    )
}

#[test]
fn dl_worked_pencil() {
    let o = bin(&["dl", &row(), "--omega", "1,-1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["checks"]["transpose"], true);
    let text = stdout(&bin(&["dl", &row(), "--omega", "1,-1"]));
    assert!(text.contains("[0, z + 1, 1, -z]"));
    assert!(text.contains("[1, -z, -z - 1, 0]"));
}

#[test]
fn dl_block_evaluation() {
    let o = bin(&["dl", &row(), "--omega", "1,-1", "--mu0", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let be = &v["block_evaluation"];
    assert_eq!(be["blocks"][0], serde_json::json!([["-1", "0"]]));
    assert_eq!(be["blocks"][1], serde_json::json!([["1", "1"]]));
    assert_eq!(be["scalars"], serde_json::json!(["-1", "1"]));
}

#[test]
fn exit_codes() {
    let bad = write("bad.json", "{\"m\": 1,");
    assert_eq!(bin(&["eig", &bad]).status.code(), Some(2));
    assert_eq!(
        bin(&["dl", &row(), "--omega", "1,0,-2"]).status.code(),
        Some(2)
    );
    let cubic = write(
        "cubic.json",
        r#"{"m":1,"n":2,"grade":3,"coeffs":[[["1","0"]],[["0","0"]],[["0","1"]],[["0","0"]]]}"#,
    );
    let o = bin(&["dl", &cubic, "--omega", "1,0,-2", "--mu0", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("irrational"));
    assert_eq!(
        bin(&["mobius", &row(), "--map", "1,2,2,4"]).status.code(),
        Some(2)
    );
    assert_ne!(bin(&["frobnicate"]).status.code(), Some(0));
}

#[test]
fn eig_reports_structure() {
    let o = bin(&["eig", &row(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 1);
    assert_eq!(v["right"], serde_json::json!([2]));
    let irr = write(
        "irr.json",
        r#"{"m":1,"n":1,"grade":2,"coeffs":[[["-2"]],[["0"]],[["1"]]]}"#,
    );
    let v: Value = serde_json::from_str(&stdout(&bin(&["eig", &irr, "--json"]))).unwrap();
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn recover_worked_example() {
    let o = bin(&[
        "recover",
        &row(),
        "--polynomial",
        "--omega",
        "1,-1",
        "--what",
        "minbasis",
        "--json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    assert!(text.contains("\"indices\""), "{text}");
    let dl_out = stdout(&bin(&["dl", &row(), "--omega", "1,-1", "--json"]));
    let pencil = write("pencil.json", &dl_out);
    let o = bin(&["recover", &pencil, "--what", "minbasis"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("z^2"));
}

#[test]
fn mobius_round_trip() {
    let o = bin(&[
        "mobius",
        &row(),
        "--map",
        "0,1,1,0",
        "--omega",
        "1,-1",
        "--json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["commuting_diagram"]["holds"], true, "{v}");
    assert_eq!(v["transport_matches"], true);
    assert_eq!(
        v["result"]["coeffs"],
        serde_json::json!([[["0", "1"]], [["0", "0"]], [["1", "0"]]])
    );
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = bin(&["verify", "--seed", "42", "--count", "12"]);
    let b = bin(&["verify", "--seed", "42", "--count", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = stdout(&a)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 12);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["instance"], i);
        assert_eq!(l["status"], "pass");
        assert_eq!(l["checks"].as_array().unwrap().len(), 9);
    }
}

#[test]
fn verify_check_filter_and_violation() {
    let o = bin(&[
        "verify",
        "--seed",
        "3",
        "--count",
        "4",
        "--check",
        "index-sum",
        "--check",
        "bezout",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for l in stdout(&o).lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    }
    let o = bin(&[
        "verify",
        "--seed",
        "5",
        "--count",
        "4",
        "--inject-violation",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for l in stdout(&o).lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(
            v["status"],
            "hypothesis-violated, structural checks skipped"
        );
        let unconditional: Vec<&Value> = v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["status"] == "pass")
            .collect();
        assert!(unconditional.len() >= 3);
        assert!(v.get("observed").is_some());
    }
}

#[test]
fn verify_from_spec_file() {
    let spec = write(
        "spec.json",
        r#"[{"m":2,"n":3,"grade":2,"rank":2,"finite":{"1/2":[1]},"inf":[1],"right":[2],"left":[],"seed":9}]"#,
    );
    let o = bin(&["verify", "--spec", &spec]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    let bad = write(
        "badspec.json",
        r#"{"m":1,"n":1,"grade":2,"rank":1,"finite":{"0":[5]}}"#,
    );
    assert_eq!(bin(&["verify", "--spec", &bad]).status.code(), Some(2));
}
