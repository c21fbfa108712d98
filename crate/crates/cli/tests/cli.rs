use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy-sphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn value<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no {name}"))
}

#[test]
fn constants_dim_six() {
    let out = run(&["constants", "--dim", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "constants");
    assert_eq!(value(&doc, "n_lambda")["value"], 4.0);
    assert_eq!(value(&doc, "tau")["exact"], serde_json::json!([141, 128]));
    assert_eq!(value(&doc, "tau")["source"], "exact-rational");
    assert_eq!(value(&doc, "C_lambda")["exact"], serde_json::json!([8, 9]));
    let bd = value(&doc, "B_d")["value"].as_f64().unwrap();
    assert!((bd - 5.0 / 3.0).abs() < 1e-12);
}

#[test]
fn constants_dim_three_has_no_finite_constant() {
    let out = run(&["constants", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["verdict"].as_str().unwrap().starts_with("no finite constant"));
    assert!(value(&doc, "C_lambda")["value"].is_null());
    let b = value(&doc, "B_lambda")["value"].as_f64().unwrap();
    assert!((b - (2.0 - 2.0 * 6f64.sqrt() / 3.0)).abs() < 1e-12);
}

#[test]
fn constants_lambda_one() {
    let doc = json(&run(&["constants", "--lambda", "1"]));
    assert_eq!(value(&doc, "C_lambda")["value"], 8.0);
    assert_eq!(value(&doc, "n_lambda")["value"], 0.0);
}

#[test]
fn rational_lambda_keeps_exact_form() {
    let doc = json(&run(&["constants", "--lambda", "3/2"]));
    assert_eq!(doc["config"]["lambda"], "3/2");
    assert_eq!(value(&doc, "C_lambda")["exact"], serde_json::json!([2, 1]));
}

#[test]
fn every_number_has_a_source() {
    fn walk(v: &Value) {
        match v {
            Value::Object(m) => {
                if m.contains_key("value") {
                    assert!(m.contains_key("source"), "{v}");
                }
                for (k, x) in m {
                    if k != "schema" {
                        assert!(!x.is_number() || k == "value" || k == "exact", "bare number at {k}");
                    }
                    walk(x);
                }
            }
            Value::Array(a) => a.iter().for_each(walk),
            _ => {}
        }
    }
    for args in [
        &["constants", "--dim", "6"][..],
        &["certify", "--lambda", "1", "--sizes", "32,64"],
        &["table", "--lambda", "2/3", "--n-max", "5"],
        &["heat", "--lambda", "1", "--t-list", "0.1,0.01"],
        &["erratum"],
    ] {
        walk(&json(&run(args)));
    }
}

#[test]
fn certify_exit_codes() {
    let out = run(&["certify", "--lambda", "2", "--sizes", "64,256"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["n0"]["value"], 4.0);
    assert_eq!(doc["bound_ok"], true);
    assert_eq!(doc["verdict"]["kind"], "converging");

    let doc = json(&run(&["certify", "--lambda", "1/2", "--n0", "0", "--sizes", "64,128"]));
    assert_eq!(doc["verdict"]["kind"], "diverging");

    // too small for the excluded block
    let out = run(&["certify", "--lambda", "2", "--n0", "4", "--sizes", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["constants"][..],
        &["constants", "--lambda", "-1/2"],
        &["constants", "--lambda", "1", "--dim", "3"],
        &["certify", "--lambda", "1", "--sizes", "256,64"],
        &["verify", "--suite", "nope"],
        &["erratum", "--eps-list", "1.5"],
        &["table", "--lambda", "1", "--exact", "--precision", "float64"],
        &["bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_json_lines() {
    let out = run(&["verify", "--suite", "erratum"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() > 2);
    for l in &lines {
        assert_eq!(l["schema"], 1);
    }
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failed"]["value"], 0.0);
    assert!(lines[..lines.len() - 1].iter().all(|l| l["pass"] == true));
}

#[test]
fn verify_identities_passes() {
    assert_eq!(run(&["verify", "--suite", "identities"]).status.code(), Some(0));
}

#[test]
fn verify_constants_reports_failures() {
    let out = run(&["verify", "--suite", "constants", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let failed = r
        .records()
        .filter(|rec| &rec.as_ref().unwrap()[2] == "false")
        .count();
    assert_eq!(failed, 2);
}

#[test]
fn table_csv_exact_columns() {
    let out = run(&["table", "--lambda", "2", "--n-max", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(&out.stdout[..]);
    let header = r.headers().unwrap().clone();
    let beta_exact = header.iter().position(|h| h == "beta_exact").unwrap();
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[1][beta_exact], "141/128");
}

#[test]
fn out_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["verify", "--suite", "uncertainty", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn thread_count_does_not_change_output() {
    let go = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_hardy-sphere"))
            .args(["verify", "--suite", "all", "--format", "csv"])
            .env("HARDY_SPHERE_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = go("1");
    let four = go("4");
    assert_eq!(one.status.code(), Some(1));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(go("zero").status.code(), Some(2));
}

#[test]
fn heat_scaled_limits() {
    let doc = json(&run(&["heat", "--lambda", "1", "--t-list", "0.01,0.001"]));
    assert_eq!(doc["limits"]["localization_scaled"]["value"], 0.75);
    let last = doc["rows"].as_array().unwrap().last().unwrap();
    let g = last["gradient_scaled"]["value"].as_f64().unwrap();
    assert!((g - 1.5).abs() < 0.05, "{g}");
}

#[test]
fn erratum_family_is_exact() {
    let doc = json(&run(&["erratum", "--eps-list", "0.1"]));
    let fam = &doc["vanishing_family"];
    assert_eq!(fam["first_moment"]["exact"], serde_json::json!([0, 1]));
    assert_eq!(fam["tau_vanishes"], true);
    let row = &doc["circle"][0];
    let r = row["ratio"]["value"].as_f64().unwrap();
    assert!((r - 0.04502487562189055).abs() < 1e-12);
}
