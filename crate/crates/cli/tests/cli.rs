use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const K4: &str = "v 4\ne 1 0 1\ne 2 0 2\ne 3 0 3\ne 4 1 2\ne 5 1 3\ne 6 2 3\n";
// K4 with the labels 2 and 6 exchanged
const K4_SWAPPED: &str = "v 4\ne 1 0 1\ne 6 0 2\ne 3 0 3\ne 4 1 2\ne 5 1 3\ne 2 2 3\n";

fn bilift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path: PathBuf = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn circuits_of_k4() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g", K4);
    let out = bilift(&["circuits", &k4]);
    assert_eq!(out.status.code(), Some(0));
    let circuits = json(&out);
    let circuits = circuits.as_array().unwrap();
    assert_eq!(circuits.len(), 6);
    assert!(circuits.iter().all(|c| c.as_array().unwrap().len() == 5));
    let graphic = json(&bilift(&["circuits", &k4, "--matroid", "graphic"]));
    assert_eq!(graphic.as_array().unwrap().len(), 7);
}

#[test]
fn verdict_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.g", K4);
    let b = write(dir.path(), "b.g", K4_SWAPPED);
    let same = bilift(&["two-iso", &a, &a]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(json(&same)["two_isomorphic"], true);
    let differ = bilift(&["two-iso", &a, &b]);
    assert_eq!(differ.status.code(), Some(1));
    assert_eq!(json(&differ)["two_isomorphic"], false);
    assert_eq!(bilift(&["equal", &a, &b]).status.code(), Some(0));
    assert_eq!(bilift(&["equal", &a, &b, "--matroid", "graphic"]).status.code(), Some(1));
    let cert = bilift(&["certify", &a, &b]);
    assert_eq!(cert.status.code(), Some(1));
    assert_eq!(json(&cert)["outcome"], "not_found");
}

#[test]
fn classify_two_k4_labelings() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.g", K4);
    let b = write(dir.path(), "b.json", &serde_json::json!({
        "v": 4, "edges": [[1,0,1],[6,0,2],[3,0,3],[4,1,2],[5,1,3],[2,2,3]]
    }).to_string());
    let out = bilift(&["classify", &a, &b]);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&out);
    assert_eq!(c["case"]["tag"], "k4_subdivisions");
    assert_eq!(c["witnesses"]["ears"].as_array().unwrap().len(), 6);
    let pretty = bilift(&["classify", &a, &b, "--pretty"]);
    assert_eq!(String::from_utf8_lossy(&pretty.stdout), "case: k4-subdivisions\n");
}

#[test]
fn hypothesis_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g", K4);
    let k23 = write(dir.path(), "k23.g", "v 2\ne 1 0 1\ne 2 0 1\ne 3 0 1\ne 4 0 1\ne 5 0 1\ne 6 0 1\n");
    let out = bilift(&["classify", &k4, &k23]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis"));

    let bad = write(dir.path(), "bad.g", "v 2\ne 1 0 1\ne 2 0 x\n");
    let out = bilift(&["circuits", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(bilift(&["circuits", "missing.g"]).status.code(), Some(2));
    assert_eq!(bilift(&["circuits", &k4, "--bogus"]).status.code(), Some(2));
    assert_eq!(bilift(&[]).status.code(), Some(2));
}

#[test]
fn rank_and_minors() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g", K4);
    let r = json(&bilift(&["rank", &k4]));
    assert_eq!(r["rank"], 4);
    assert_eq!(r["independent"], false);
    let r = json(&bilift(&["rank", &k4, "--set", "1,2,4", "--matroid", "graphic"]));
    assert_eq!(r["rank"], 2);
    let minors = bilift(&["check-minors", &k4]);
    assert_eq!(minors.status.code(), Some(0));
    assert_eq!(json(&minors).as_array().unwrap().len(), 6);
    assert_eq!(bilift(&["check-minors", &k4, "--edge", "9"]).status.code(), Some(2));
}

#[test]
fn generated_graphs_reparse() {
    let dir = tempfile::tempdir().unwrap();
    for (family, params) in [("k4", ""), ("k", "5"), ("k2m", "4"), ("k3", "1,2,3"), ("split-k4", "3")] {
        let mut args = vec!["gen", "--family", family];
        if !params.is_empty() {
            args.extend(["--params", params]);
        }
        let out = bilift(&args);
        assert_eq!(out.status.code(), Some(0), "{family}");
        let text = String::from_utf8(out.stdout).unwrap();
        let path = write(dir.path(), "g.g", &text);
        let circuits = bilift(&["circuits", &path]);
        assert_eq!(circuits.status.code(), Some(0), "{family}");
        let json_out = bilift(&[&args[..], &["--json"]].concat());
        let round = bilift(&["circuits", &write(dir.path(), "g.json", &String::from_utf8(json_out.stdout).unwrap())]);
        assert_eq!(round.stdout, circuits.stdout);
    }
    assert_eq!(bilift(&["gen", "--family", "k3", "--params", "1"]).status.code(), Some(2));
}

#[test]
fn exceptional_pair_directory() {
    let dir = tempfile::tempdir().unwrap();
    let pair_dir = dir.path().join("pair");
    let out = bilift(&["gen", "--exceptional", "four-vertex-split", "--n", "8", "--out", pair_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let g1 = pair_dir.join("g1.g");
    let g2 = pair_dir.join("g2.g");
    let summary: Value = serde_json::from_str(&fs::read_to_string(pair_dir.join("pair.json")).unwrap()).unwrap();
    assert_eq!(summary["n"], 8);
    let (g1, g2) = (g1.to_str().unwrap(), g2.to_str().unwrap());
    assert_eq!(bilift(&["equal", g1, g2]).status.code(), Some(0));
    assert_eq!(bilift(&["two-iso", g1, g2]).status.code(), Some(1));
    let c = json(&bilift(&["classify", g1, g2]));
    assert_eq!(c["case"]["shape"], "four-vertex-split");
    assert_eq!(bilift(&["gen", "--exceptional", "four-vertex-split", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = bilift(&[
        "verify", "--max-v", "4", "--max-e", "6", "--checks", "theorem-totality",
        "--jobs", "2", "--out", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    assert_eq!(r["stats"]["theorem-totality"]["violations"], 0);
    assert!(r["case_counts"]["k4-subdivisions"].as_u64().unwrap() > 0);
    assert_eq!(bilift(&["verify", "--max-v", "4", "--max-e", "3", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(bilift(&["verify", "--max-v", "9", "--max-e", "3"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g", K4);
    let a = bilift(&["check-minors", &k4]);
    let b = bilift(&["check-minors", &k4]);
    assert_eq!(a.stdout, b.stdout);
    let strip = |out: Output| {
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["wall_time_ms"] = Value::Null;
        v.to_string()
    };
    let args = ["verify", "--max-v", "3", "--max-e", "5"];
    assert_eq!(strip(bilift(&args)), strip(bilift(&args)));
}
