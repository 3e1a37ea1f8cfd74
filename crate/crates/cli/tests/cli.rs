// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::Command;

use averaging_cli::{run, CommandResult, ErrorKind, Status};
use averaging_core::enumeration::{census, CensusOptions, RunCap, WordClass};
use serde_json::{json, Value};

fn cli(args: &[&str]) -> CommandResult {
    run(std::iter::once("averaging").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> Value {
    let r = cli(args);
    assert_eq!(r.status, Status::Ok, "{args:?}: {}", r.stdout());
    r.payload
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 4] = [
        (&["apply-p", "[x[y]]z"], "apply_p.json"),
        (&["schroeder", "--n", "7"], "schroeder_7.json"),
        (&["census", "--run-cap", "1", "--max-degree", "3", "--include-one"], "census_v1_d3.json"),
        (
            &["census", "--run-cap", "1", "--max-degree", "3", "--include-one", "--class", "A", "--format", "csv"],
            "census_v1_d3_A.csv",
        ),
    ];
    for (args, file) in cases {
        assert_eq!(cli(args).stdout(), golden(file), "{args:?}");
    }
}

#[test]
fn pinned_values() {
    assert_eq!(ok(&["apply-p", "[x[y]]z"])["word"], "[x[y[z]]]");
    assert_eq!(ok(&["schroeder", "--n", "7"])["schroeder"], 8558);
    let c = ok(&["census", "--run-cap", "1", "--max-degree", "3", "--include-one"]);
    assert_eq!(c["degree_totals"]["A"], json!([2, 4, 12, 44]));
}

#[test]
fn census_payload_is_the_library_table() {
    let c = ok(&["census", "--run-cap", "2", "--max-degree", "2", "--class", "I"]);
    let lib = census(&CensusOptions::new(RunCap::Finite(2), 2, 10)).unwrap();
    assert_eq!(c["tables"]["I"], lib.table(WordClass::Indecomposable).to_json());
    assert_eq!(c["max_arity"], 10);
    assert!(c["tables"].get("A").is_none());
}

#[test]
fn word_and_tree_commands() {
    let t = ok(&["word2tree", "[x]x"]);
    assert_eq!(t, json!({"tree": "B(U(L),L)", "word": "[x]x", "arity": 2}));
    assert_eq!(ok(&["tree2word", "U(B(L,U(L)))"])["word"], "[x[x]]");

    let by_tree = ok(&["compose", "B(L,L)", "2", "U(L)"]);
    let by_word = ok(&["compose", "x x", "2", "[x]"]);
    assert_eq!(by_tree["tree"], "B(L,U(L))");
    assert_eq!(by_tree["tree"], by_word["tree"]);
    assert_eq!(by_tree["arity"], 2);

    let s = ok(&["schroeder-trees", "--n", "3"]);
    assert_eq!(s["count"], 6);
    assert_eq!(s["trees"].as_array().unwrap().len(), 6);
}

#[test]
fn normalize_and_product() {
    assert_eq!(ok(&["normalize", "[[x]y]"])["normal_form"], "[x[y]]");
    let r = ok(&["normalize", "[x][y]", "--rewrite"]);
    assert_eq!(r["normal_form"], "[x[y]]");
    assert!(r["steps"].as_u64().unwrap() >= 1);
    assert_eq!(ok(&["product", "[x]", "[y]"])["word"], "[x[y]]");
    let sum = ok(&["product", "x + y", "[z]"]);
    assert_eq!(sum["terms"].as_array().unwrap().len(), 2);
    assert!(sum.get("word").is_none());
}

#[test]
fn analyze_reports_indices() {
    let a = ok(&["analyze", "x[y]z"]);
    assert_eq!(a["breadth"], 3);
    assert_eq!(a["depth"], 1);
    assert_eq!(a["head"], 0);
    assert_eq!(a["averaging"], true);
}

#[test]
fn series_formats() {
    let j = ok(&["series", "--kind", "I", "--N", "3"]);
    let csv = ok(&["series", "--kind", "I", "--N", "3", "--format", "csv"]);
    assert!(j.is_object());
    assert!(csv.as_str().unwrap().lines().count() > 1);
}

#[test]
fn exit_codes() {
    let r = cli(&["normalize", "[x]]"]);
    assert_eq!((r.status, r.kind, r.exit_code()), (Status::Error, Some(ErrorKind::Parse), 2));
    assert_eq!(r.payload["error"]["position"], 3);
    assert_eq!(r.payload["error"]["kind"], "parse");

    assert_eq!(cli(&["frobnicate"]).exit_code(), 1);
    assert_eq!(cli(&["schroeder"]).exit_code(), 1);
    assert_eq!(cli(&["census", "--run-cap", "inf", "--max-degree", "2"]).exit_code(), 1);

    assert_eq!(cli(&["census", "--max-degree", "5", "--budget", "10"]).exit_code(), 3);
    assert_eq!(cli(&["schroeder-trees", "--n", "8", "--budget", "10"]).exit_code(), 3);
    assert_eq!(cli(&["normalize", "[[[x]y]z]", "--rewrite", "--budget", "0"]).exit_code(), 3);

    let bad_tree = cli(&["tree2word", "B(L,Q)"]);
    assert_eq!(bad_tree.exit_code(), 2);
    assert_eq!(bad_tree.payload["error"]["position"], 4);
    assert_eq!(cli(&["word2tree", "x[y]"]).exit_code(), 2);
}

#[test]
fn check_instance_reads_json() {
    let dir = std::env::temp_dir().join(format!("averaging-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // k × k with P(a, b) = ((a + b)/2, (a + b)/2)
    let path = dir.join("mean.json");
    let alg = json!({
        "dim": 2,
        "basis": ["e0", "e1"],
        "mul": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
        "op": [["1/2", "1/2"], ["1/2", "1/2"]]
    });
    std::fs::write(&path, alg.to_string()).unwrap();
    let r = cli(&["check-instance", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(r.status, Status::Ok, "{}", r.stdout());
    assert_eq!(r.payload["dim"], 2);
    assert_eq!(r.payload["averaging"]["holds"], true);
    assert_eq!(r.payload["idempotent"], true);
    assert_eq!(cli(&["check-instance", "/nonexistent/alg.json"]).status, Status::Error);
}

#[test]
fn deterministic_output() {
    let args = ["census", "--run-cap", "2", "--max-degree", "3", "--words"];
    assert_eq!(cli(&args).stdout(), cli(&args).stdout());
}

#[test]
fn binary_streams_and_exit_status() {
    let bin = env!("CARGO_BIN_EXE_averaging");
    let out = Command::new(bin).args(["schroeder", "--n", "7"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("schroeder_7.json"));

    let out = Command::new(bin).args(["analyze", "[x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let payload: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["error"]["kind"], "parse");

    let out = Command::new(bin).env("AVERAGING_THREADS", "zero").args(["schroeder", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).env("AVERAGING_THREADS", "2").args(["schroeder", "--n", "3"]).output().unwrap();
    assert!(out.status.success());
}
