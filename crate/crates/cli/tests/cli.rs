use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wapkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wapkit"))
        .args(args)
        .env_remove("WAPKIT_CAP_N")
        .env_remove("WAPKIT_CAP_SUM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn check_reports_violations_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", r#"{"sig":"graph","n":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let o = wapkit(&["check", "ga:4,5", &tri]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["member"], false);
    assert!(v["violations"][0]["condition"].as_str().unwrap().ends_with("(1)"));

    let path4 = write(dir.path(), "p4.json", r#"{"sig":"graph","n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    assert_eq!(wapkit(&["check", "g", &path4]).status.code(), Some(0));

    let conflict = write(dir.path(), "st.json", r#"{"sig":"st","n":3,"s":[[0,2]],"t":[[1,2]]}"#);
    let o = wapkit(&["check", "p", &conflict]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("condition (3)"));
}

#[test]
fn check_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    assert_eq!(wapkit(&["check", "g", &bad]).status.code(), Some(2));
    let st = write(dir.path(), "st.json", r#"{"sig":"st","n":1}"#);
    assert_eq!(wapkit(&["check", "g", &st]).status.code(), Some(2));
    assert_eq!(wapkit(&["check", "h", &st]).status.code(), Some(2));
}

#[test]
fn enumerate_counts_and_round_trip() {
    assert_eq!(stdout(&wapkit(&["enumerate", "k5", "1"])).trim(), "5");
    assert_eq!(stdout(&wapkit(&["enumerate", "g", "3"])).trim(), "3");
    assert_eq!(stdout(&wapkit(&["enumerate", "ga:3,4", "3"])).trim(), "4");
    assert_eq!(wapkit(&["--cap-n", "3", "enumerate", "g", "4"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p3.json");
    let o = wapkit(&["enumerate", "p", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let items: Vec<Value> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(items.len().to_string(), stdout(&o).trim());
    for (i, item) in items.iter().enumerate() {
        let f = write(dir.path(), &format!("m{i}.json"), &item.to_string());
        assert_eq!(wapkit(&["check", "p", &f]).status.code(), Some(0));
    }
}

#[test]
fn demos_report_no_amalgam() {
    for args in [vec!["demo", "k5"], vec!["demo", "g"], vec!["demo", "ga", "--set", "4,5"], vec!["demo", "p"]] {
        let o = wapkit(&[&["--json"], args.as_slice()].concat());
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["certificate"]["verdict"], "fail", "{args:?}");
    }
    let text = stdout(&wapkit(&["demo", "k5"]));
    assert!(text.contains("0:0") && text.contains("1:1") && text.contains("1:2"));
}

#[test]
fn verify_exit_codes() {
    let o = wapkit(&["verify", "k5-undetermined"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");

    let o = wapkit(&["verify", "ga-distinct", "--set-a", "3,4", "--set-b", "4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["structure"]["n"], 3);

    let o = wapkit(&["verify", "pzk-not-cofinal"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["kind"], "embedding");

    assert_eq!(wapkit(&["verify", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(wapkit(&["verify", "list"]).status.code(), Some(0));
}

#[test]
fn cap_overrides_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_wapkit"))
        .args(["verify", "k5-hp"])
        .env("WAPKIT_CAP_N", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["notes"][0].as_str().unwrap().contains("up to size 2"));
}

#[test]
fn limit_tree_outputs_check_as_members() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t.dot");
    let json = dir.path().join("t.json");
    let o = wapkit(&[
        "limit",
        "tree",
        "--depth",
        "2",
        "--branching",
        "2",
        "-o",
        dot.to_str().unwrap(),
        "--json-out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph tree {"));
    assert_eq!(wapkit(&["check", "g", json.to_str().unwrap()]).status.code(), Some(0));

    let single = stdout(&wapkit(&["limit", "tree", "--depth", "0"]));
    assert_eq!(single.lines().filter(|l| l.trim_end().ends_with(';')).count(), 1);
}

#[test]
fn limit_chain_ends_with_early_vertices_determined() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chain.json");
    let log = dir.path().join("log.json");
    let snaps = dir.path().join("snaps");
    let o = wapkit(&[
        "--json",
        "limit",
        "chain",
        "--class",
        "k5",
        "--steps",
        "50",
        "--cap",
        "30",
        "-o",
        out.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
        "--at",
        "10,25",
        "--snapshot-dir",
        snaps.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["undetermined_early"], serde_json::json!([]));
    assert_eq!(wapkit(&["check", "k5", out.to_str().unwrap()]).status.code(), Some(0));
    for t in [10, 25] {
        let p = snaps.join(format!("step-{t}.json"));
        assert_eq!(wapkit(&["check", "k5", p.to_str().unwrap()]).status.code(), Some(0));
    }
    let entries: Vec<Value> = serde_json::from_str(&fs::read_to_string(&log).unwrap()).unwrap();
    assert_eq!(entries.len(), 50);
}
