use std::fs;
use std::path::Path;
use std::process::Command;

use lrtrop::formats::ExchangeFile;
use lrtrop::{run, Output};
use serde_json::Value;

fn lrtrop(args: &[&str]) -> Output {
    run(std::iter::once("lrtrop").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let out = lrtrop(&v);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn worked_examples() {
    assert_eq!(lrtrop(&["lr", "--lambda", "2,1", "--nu", "2,1", "--mu", "3,2,1"]).stdout, "2\n");
    let v = json(&["mult", "--type", "A2", "--lambda", "1,1", "--nu", "1,1", "--mu", "1,1", "--oracle"]);
    assert_eq!((v["tropical"].as_u64(), v["oracle"].as_u64(), v["agree"].as_bool()), (Some(2), Some(2), Some(true)));
    assert_eq!(v["witnesses"], serde_json::json!([[0, 1, 0], [1, 0, 1]]));
    let out = lrtrop(&["transition", "--type", "A2", "--from", "1,2,1", "--to", "2,1,2", "--t", "1,2,3", "--mode", "tropical"]);
    assert_eq!(out.stdout, "4,1,2\n");
    let out = lrtrop(&["transition", "--type", "A2", "--from", "1,2,1", "--to", "2,1,2", "--t", "1,2,3", "--mode", "geometric"]);
    assert_eq!(out.stdout, "3/2,4,1/2\n");
}

#[test]
fn lr_expansion_in_three_variables() {
    let v = json(&["lr", "--lambda", "2,1", "--nu", "2,1", "--parts", "3"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 5);
    assert_eq!(v["total"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(lrtrop(&["bogus"]).code, 64);
    assert_eq!(lrtrop(&["lr", "--lambda", "1", "--nu", "1", "--frobnicate"]).code, 64);
    assert_eq!(lrtrop(&["lr", "--lambda", "x", "--nu", "1"]).code, 64);
    assert_eq!(lrtrop(&["--help"]).code, 0);
    // Domain: non-partition, non-simply-laced tropical count, non-reduced word.
    assert_eq!(lrtrop(&["lr", "--lambda", "1,2", "--nu", "1"]).code, 1);
    assert_eq!(lrtrop(&["mult", "--type", "B2", "--lambda", "1,0", "--nu", "1,0", "--mu", "0,0"]).code, 1);
    assert_eq!(lrtrop(&["mult", "--type", "Q2", "--lambda", "1,0", "--nu", "1,0"]).code, 1);
    let out = lrtrop(&["transition", "--type", "A2", "--from", "1,1,2", "--to", "2,1,2", "--t", "1,2,3"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("domain error"));
    // Resource caps.
    let out = lrtrop(&["clusters", "--type", "D4", "--max-seeds", "10"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("complete               false"));
    let dir = tempfile::tempdir().unwrap();
    let cycle = write(dir.path(), "cycle.json", r#"{"n":3,"m":3,"entries":[[0,1,-1],[-1,0,1],[1,-1,0]],"coefficient_names":[]}"#);
    assert_eq!(lrtrop(&["finite-type", "--matrix", &cycle, "--cap", "1"]).code, 2);
    assert_eq!(json(&["finite-type", "--matrix", &cycle])["verdict"], "finite");
    // Unreadable or malformed input files are domain errors.
    assert_eq!(lrtrop(&["mutate", "--seed", "/nonexistent/seed.json", "--at", "1"]).code, 1);
    let bad = write(dir.path(), "bad.json", "{\"n\": 2");
    assert_eq!(lrtrop(&["mutate", "--seed", &bad, "--at", "1"]).code, 1);
    let skew = write(dir.path(), "skew.json", r#"{"n":2,"m":2,"entries":[[0,1],[1,0]]}"#);
    assert_eq!(lrtrop(&["mutate", "--seed", &skew, "--at", "1"]).code, 1);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lrtrop");
    let ok = Command::new(bin).args(["lr", "--lambda", "2,1", "--nu", "2,1", "--mu", "3,2,1"]).output().unwrap();
    assert_eq!((ok.status.code(), String::from_utf8(ok.stdout).unwrap()), (Some(0), "2\n".into()));
    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(64));
    let domain = Command::new(bin).args(["lr", "--lambda", "1,2", "--nu", "1"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
}

#[test]
fn mutate_twice_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let start = write(
        dir.path(),
        "sl3.json",
        r#"{"n":1,"m":5,"entries":[[0],[1],[1],[-1],[-1]],"coefficient_names":["x1","x23","x3","x12"],"cluster_names":["x13"]}"#,
    );
    let once = json(&["mutate", "--seed", &start, "--at", "1"]);
    assert_eq!(once["cluster"][0]["text"], "(x1*x23 + x3*x12)/x13");
    let once_path = write(dir.path(), "once.json", &once.to_string());
    let twice = json(&["mutate", "--seed", &once_path, "--at", "1"]);
    let initial: ExchangeFile = serde_json::from_str(&fs::read_to_string(&start).unwrap()).unwrap();
    let back: ExchangeFile = serde_json::from_value(twice).unwrap();
    assert_eq!(back.seed().unwrap(), initial.seed().unwrap());
    // Longer paths: a pentagon walk in A2 returns the cluster up to order.
    let a2 = write(dir.path(), "a2.json", r#"{"n":2,"m":2,"entries":[[0,1],[-1,0]],"coefficient_names":[]}"#);
    let v = json(&["mutate", "--seed", &a2, "--at", "1,2,1,2,1"]);
    let mut texts: Vec<String> = v["cluster"].as_array().unwrap().iter().map(|x| x["text"].as_str().unwrap().to_string()).collect();
    texts.sort();
    assert_eq!(texts, vec!["x1", "x2"]);
}

#[test]
fn transition_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for mode in ["tropical", "geometric"] {
        let there = json(&["transition", "--type", "A3", "--from", "1,2,1,3,2,1", "--to", "3,2,3,1,2,3", "--t", "5,1,4,2,7,3", "--mode", mode]);
        assert_eq!(there["mode"], mode);
        let path = write(dir.path(), &format!("{mode}.json"), &there.to_string());
        let back = json(&["transition", "--input", &path, "--to", "1,2,1,3,2,1"]);
        let expected: Vec<Value> = match mode {
            "tropical" => [5, 1, 4, 2, 7, 3].iter().map(|&x| Value::from(x)).collect(),
            _ => ["5", "1", "4", "2", "7", "3"].iter().map(|&x| Value::from(x)).collect(),
        };
        assert_eq!(back["values"], Value::Array(expected));
    }
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.json", r#"{"n":2,"m":2,"entries":[[0,2],[-2,0]],"coefficient_names":[]}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["identities", "--which", "both", "--type", "A2", "--samples", "5", "--rng-seed", "9"],
        vec!["tp-check", "--type", "A2", "--samples", "5", "--rng-seed", "9"],
        vec!["transition", "--type", "A2", "--trials", "20", "--geometric-trials", "5"],
        vec!["finite-type", "--type", "A3", "--mutations", "4", "--rng-seed", "2"],
        vec!["clusters", "--type", "A3", "--list"],
        vec!["laurent-check", "--matrix", &k, "--depth", "6", "--shadow"],
        vec!["mult", "--type", "A2", "--lambda", "2,1", "--nu", "1,2", "--oracle"],
    ];
    for args in cases {
        let mut args = args.clone();
        args.push("--json");
        let (a, b) = (lrtrop(&args), lrtrop(&args));
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        serde_json::from_str::<Value>(&a.stdout).unwrap();
    }
}

#[test]
fn cluster_verbs() {
    let v = json(&["clusters", "--type", "A3"]);
    assert_eq!((v["variables"].as_u64(), v["clusters"].as_u64()), (Some(9), Some(14)));
    let v = json(&["clusters", "--grassmannian", "2"]);
    assert_eq!((v["triangulations"].as_u64(), v["passed"].as_bool()), (Some(5), Some(true)));
    let dir = tempfile::tempdir().unwrap();
    let k = write(dir.path(), "k.json", r#"{"n":2,"m":2,"entries":[[0,2],[-2,0]],"coefficient_names":[]}"#);
    let v = json(&["laurent-check", "--matrix", &k, "--depth", "8", "--shadow"]);
    assert_eq!(v["shadow"], serde_json::json!(["1", "1", "2", "5", "13", "34", "89", "233"]));
    assert_eq!(v["passed"], true);
    let v = json(&["finite-type", "--matrix", &k]);
    assert_eq!(v["verdict"], "infinite");
}

#[test]
fn positivity_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["tp-check", "--type", "A2", "--word", "1,2,1", "--t", "1,2,3"]);
    assert_eq!(v["matrix"], serde_json::json!([["1", "4", "2"], ["0", "1", "2"], ["0", "0", "1"]]));
    assert_eq!(v["totally_positive"], true);
    let m = write(dir.path(), "m.json", &v["matrix"].to_string());
    assert_eq!(json(&["tp-check", "--matrix", &m])["totally_positive"], true);
    let short = write(dir.path(), "s.json", r#"[["1","1","0"],["0","1","1"],["0","0","1"]]"#);
    let v = json(&["tp-check", "--matrix", &short]);
    assert_eq!(v["totally_positive"], false);
    assert_eq!(v["first_nonpositive"]["value"], "0");
    // A word of the wrong length is rejected.
    assert_eq!(lrtrop(&["tp-check", "--type", "A2", "--word", "1,2", "--t", "1,1"]).code, 1);
    let v = json(&["identities", "--which", "dodgson", "--type", "A2", "--samples", "3"]);
    assert_eq!((v["dodgson_instances"].as_u64(), v["plucker_instances"].as_u64()), (Some(18), Some(0)));
}
