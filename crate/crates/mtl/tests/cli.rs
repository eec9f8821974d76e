//! End-to-end runs of the `mtl` binary: exit codes, JSON shape and
//! byte-identical output across worker counts.

use std::process::{Command, Output};

use serde_json::Value;

fn mtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtl")).args(args).env_remove("MTL_BUDGET_NODES").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn u23_square_search_finds_one_product() {
    let out = mtl(&["tensor", "search", "--a", "uniform:2,3", "--b", "uniform:2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["count"], 1);
    assert_eq!(r["result"]["complete"], true);
    assert_eq!(r["result"]["products"][0]["bases"].as_array().unwrap().len(), 81);
}

#[test]
fn ingleton_scan_on_vamos_reports_the_witness() {
    let out = mtl(&["ineq", "scan", "--ineq", "ingleton", "--matroid", "vamos", "--strategy", "canonical-pairs"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "violated");
    assert_eq!(r["result"]["witness"]["sides"]["slack"], "-1");
    assert_eq!(r["result"]["witness"]["named"]["A"], serde_json::json!(["a1", "a2"]));
}

#[test]
fn exit_codes() {
    assert_eq!(mtl(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(mtl(&["tensor", "search", "--a", "fano"]).status.code(), Some(64));
    assert_eq!(mtl(&["rank", "--matroid", "{\"n\": 2}"]).status.code(), Some(65));
    assert_eq!(mtl(&["rank", "--matroid", "{\"n\":4,\"rank\":2,\"bases\":[[0,1],[2,3]]}"]).status.code(), Some(65));
    assert_eq!(mtl(&["catalog", "emit", "no-such-matroid"]).status.code(), Some(65));
    let out = mtl(&["--budget-nodes", "10", "tensor", "search", "--a", "uniform:2,4", "--b", "uniform:2,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["verdict"], "inconclusive");
}

#[test]
fn matroid_operands_agree_across_forms() {
    let emitted = mtl(&["catalog", "emit", "fano"]);
    let fano = report(&emitted)["result"].to_string();
    let dir = std::env::temp_dir().join(format!("mtl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fano.json");
    std::fs::write(&path, &fano).unwrap();
    let a = mtl(&["rank", "--matroid", "fano", "--set", "[0,1,3]"]);
    let b = mtl(&["rank", "--matroid", &fano, "--set", "[0,1,3]"]);
    let c = mtl(&["rank", "--matroid", path.to_str().unwrap(), "--set", "[0,1,3]"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_identical_across_worker_counts() {
    let cases: [&[&str]; 4] = [
        &["tensor", "search", "--a", "uniform:2,4", "--b", "uniform:1,3"],
        &["ineq", "scan", "--ineq", "new_ineq", "--matroid", "non_desargues", "--strategy", "singletons"],
        &["ineq", "scan", "--ineq", "ingleton", "--matroid", "non_pappus", "--strategy", "all-subsets", "--budget-nodes", "50000"],
        &["tensor", "depth", "--a", "vamos", "--b", "uniform:2,3", "--k", "2"],
    ];
    for args in cases {
        let one = mtl(&[&["--threads", "1"], args].concat());
        let eight = mtl(&[&["--threads", "8"], args].concat());
        assert_eq!(one.status.code(), eight.status.code(), "{args:?}");
        assert_eq!(one.stdout, eight.stdout, "{args:?}");
        assert_eq!(one.stdout, mtl(&[&["--threads", "1"], args].concat()).stdout, "{args:?}");
    }
}

#[test]
fn lp_certificate_renders_to_a_violated_inequality() {
    let out = mtl(&["ineq", "from-farkas", "--a", "uniform:2,3", "--b", "vamos", "--family", "ingleton"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "infeasible");
    assert_eq!(r["result"]["slack"], "-1");
}

#[test]
fn json_out_matches_stdout() {
    let path = std::env::temp_dir().join(format!("mtl-out-{}.json", std::process::id()));
    let out = mtl(&["--json-out", path.to_str().unwrap(), "ineq", "list"]);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn reproduce_all_matches_every_target() {
    let out = mtl(&["reproduce", "paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["verdict"], "match");
    let targets = r["result"]["targets"].as_array().unwrap();
    assert_eq!(targets.len(), 9);
    let nd = targets.iter().find(|t| t["target"] == "non-desargues-newineq").unwrap();
    assert_eq!(nd["result"]["new_ineq_sides"]["slack"], "-1");
    assert_eq!(mtl(&["reproduce", "no-such-target"]).status.code(), Some(65));
}
