use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use hk_core::io::{form_json, load_op, write_form};
use hk_core::lefschetz::{build_basis, OpName};
use hk_core::quaternionic::{standard_triple, Quaternion};
use hk_core::{Form, MultiIndex, Scalar};

fn hk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hk")).args(args).env_remove("HK_SEED").output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write_json(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_q1_passes() {
    let out = hk(&["--q", "1", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    let names: Vec<&str> = r["records"].as_array().unwrap().iter().map(|x| x["check"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("su2:")));
    assert!(names.iter().any(|n| n.starts_with("hodge:")));
    assert!(names.iter().any(|n| n.starts_with("so5:")));
    assert!(names.iter().any(|n| n.starts_with("roots:")));
    for rec in r["records"].as_array().unwrap() {
        assert!(rec.get("witness").is_some() && rec.get("data").is_some());
    }
}

#[test]
fn thm21_k1_gives_four_top_forms() {
    let out = hk(&["--q", "1", "thm21", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let rec = &r["records"][0];
    let four_det = form_json(&Form::top(4).scale(&Scalar::from_int(4)));
    assert_eq!(rec["data"]["alpha"], form_json(&Form::one(4)));
    assert_eq!(rec["data"]["lhs"], four_det);
    assert_eq!(rec["data"]["rhs"], four_det);
}

#[test]
fn fixlocus_of_omega_i() {
    let dir = TempDir::new().unwrap();
    let b = build_basis(&standard_triple(1).unwrap()).unwrap();
    let path = dir.path().join("omega_i.json");
    write_form(&path, &b.kaehler(Quaternion::I)).unwrap();
    let out = hk(&["--q", "1", "fixlocus", "--form", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let locus = &r["records"][0]["data"]["fix_locus"];
    assert_eq!(locus["tag"], "AntipodalPair");
    assert_eq!(locus["direction"], serde_json::json!(["1", "0", "0"]));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad_rational =
        write_json(dir.path(), "bad.json", r#"{"dim": 4, "terms": [{"indices": [1, 2], "re": "1/0", "im": "0"}]}"#);
    let non_increasing =
        write_json(dir.path(), "order.json", r#"{"dim": 4, "terms": [{"indices": [2, 1], "re": "1", "im": "0"}]}"#);
    let extra_field = write_json(dir.path(), "extra.json", r#"{"dim": 4, "terms": [], "oops": 1}"#);
    let wrong_dim = write_json(dir.path(), "dim.json", r#"{"dim": 8, "terms": []}"#);
    for args in [
        vec!["--q", "1", "fixlocus", "--form", bad_rational.as_str()],
        vec!["--q", "1", "fixlocus", "--form", non_increasing.as_str()],
        vec!["--q", "1", "fixlocus", "--form", extra_field.as_str()],
        vec!["--q", "1", "fixlocus", "--form", wrong_dim.as_str()],
        vec!["--q", "1", "fixlocus", "--form", "/nonexistent/form.json"],
        vec!["--q", "4", "verify"],
        vec!["--q", "0", "verify"],
        vec!["--q", "1", "invariants", "--degree", "9"],
        vec!["--q", "1", "thm21", "--k", "2"],
        vec!["--q", "1", "dump-op", "--name", "X", "--out", "/tmp/never.json"],
        vec!["--q", "1", "bogus"],
    ] {
        let out = hk(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn env_seed_overrides_flag() {
    let run = |seed_env: Option<&str>, seed: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hk"));
        c.args(["--q", "1", "--seed", seed, "invariants", "--degree", "2", "--forms", "6"]);
        match seed_env {
            Some(s) => c.env("HK_SEED", s),
            None => c.env_remove("HK_SEED"),
        };
        c.output().unwrap().stdout
    };
    assert_eq!(run(Some("17"), "3"), run(None, "17"));
    assert_ne!(run(None, "3"), run(None, "17"));
}

#[test]
fn reports_are_deterministic_across_threads() {
    let a = hk(&["--q", "1", "--seed", "5", "--threads", "1", "fixlocus", "--random", "20"]);
    let b = hk(&["--q", "1", "--seed", "5", "--threads", "4", "fixlocus", "--random", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dump_op_writes_every_column() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("l_i.json");
    let out = hk(&["--q", "1", "dump-op", "--name", "L_I", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cols = file["columns"].as_array().unwrap();
    assert_eq!(cols.len(), 16);
    assert!(cols.iter().all(|c| c["image"].as_array().unwrap().len() <= 2));
    let b = build_basis(&standard_triple(1).unwrap()).unwrap();
    assert_eq!(&load_op(&path).unwrap(), b.op(OpName::L(Quaternion::I)));

    let c_path = dir.path().join("c.json");
    assert_eq!(hk(&["--q", "1", "dump-op", "--name", "C", "--out", c_path.to_str().unwrap()]).status.code(), Some(0));
    let c = load_op(&c_path).unwrap();
    assert_eq!(c.apply(&b.det()).unwrap(), Form::one(4).scale(&Scalar::from_int(6)));
}

#[test]
fn scan_with_axes_and_points() {
    let dir = TempDir::new().unwrap();
    let b = build_basis(&standard_triple(1).unwrap()).unwrap();
    let classes = serde_json::json!([
        serde_json::from_str::<Value>(&hk_core::io::form_to_json(&b.kaehler(Quaternion::I))).unwrap(),
        serde_json::from_str::<Value>(&hk_core::io::form_to_json(&Form::basis1(4, 1))).unwrap(),
    ]);
    let path = write_json(dir.path(), "classes.json", &classes.to_string());
    let out = hk(&[
        "--q",
        "1",
        "--seed",
        "2",
        "scan",
        "--classes",
        &path,
        "--samples",
        "3",
        "--include-axes",
        "--point",
        "-1/2",
        "1/3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let recs = r["records"].as_array().unwrap();
    assert_eq!(recs.len(), 3);
    // ±I are the first two samples after the explicit point
    assert_eq!(recs[0]["data"]["pp_samples"], serde_json::json!([1, 2]));
    assert_eq!(recs[1]["data"]["fix_locus"]["tag"], "None");
    let witnesses = recs[2]["data"]["witnesses"].as_array().unwrap();
    assert!(!witnesses.contains(&serde_json::json!(1)));
    assert!(witnesses.contains(&serde_json::json!(0)));
}

#[test]
fn scan_rejects_fractional_classes() {
    let dir = TempDir::new().unwrap();
    let path =
        write_json(dir.path(), "frac.json", r#"{"dim": 4, "terms": [{"indices": [1, 2], "re": "1/2", "im": "0"}]}"#);
    assert_eq!(hk(&["--q", "1", "scan", "--classes", &path]).status.code(), Some(2));
}

#[test]
fn text_output_to_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.txt");
    let out = hk(&["--q", "1", "--format", "text", "--output", path.to_str().unwrap(), "hodge"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("[PASS] hodge:")));
    assert!(text.ends_with("overall: pass\n"));
}

#[test]
fn failing_check_exits_1() {
    // the literal 2^s constant fails for s = 2 (q = 2, alpha = 1)
    let out = hk(&["--q", "2", "thm21", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let recs = r["records"].as_array().unwrap();
    assert_eq!(recs[0]["status"], "fail");
    assert_eq!(recs[1]["status"], "pass");
    assert_eq!(recs[1]["data"]["constant"]["re"], "8/3");
}

#[test]
fn non_increasing_indices_are_rejected_in_operator_files() {
    let text = r#"{"dim": 4, "columns": [{"from": [3, 1], "image": []}]}"#;
    assert!(hk_core::io::op_from_json(text).is_err());
    let dup = r#"{"dim": 4, "columns": [{"from": [1], "image": []}, {"from": [1], "image": []}]}"#;
    assert!(hk_core::io::op_from_json(dup).is_err());
    assert!(MultiIndex::new(&[2, 2], 4).is_err());
}
