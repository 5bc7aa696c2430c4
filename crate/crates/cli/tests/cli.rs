use serde_json::Value;
use std::process::{Command, Output};

fn foldlab(args: &[&str], cache: Option<&std::path::Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_foldlab"));
    c.args(args).env_remove("FOLDLAB_CACHE");
    if let Some(dir) = cache {
        c.env("FOLDLAB_CACHE", dir);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn fold_a3_gives_c2() {
    let o = foldlab(&["fold", "--type", "A", "--rank", "3", "--isogeny", "sc", "--perm", "3,2,1"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["folded"]["series"], "C");
    assert_eq!(v["folded"]["cartan"], serde_json::json!([[2, -2], [-1, 2]]));
    assert_eq!(v["isogeny"]["label"], "simply_connected");
    let dual = json(&foldlab(&["fold", "--type", "A", "--rank", "3", "--perm", "3,2,1", "--side", "dual"], None));
    assert_eq!(dual["folded"]["types"], serde_json::json!(["B2", "C2"]));
    assert_eq!(dual["side"], "dual");
}

#[test]
fn malformed_input_exits_3_with_error_object() {
    for args in [
        vec!["frobnicate"],
        vec!["fold", "--type", "A"],
        vec!["fold", "--type", "A", "--rank", "3", "--perm", "1,2,2"],
        vec!["twining", "--type", "A", "--rank", "3", "--perm", "3,2,1", "--weight", "1,0,0"],
        vec!["section-check", "--pair", "sl4:so5"],
        vec!["spectrum", "--algebra", "sl3", "--weight", "1,1", "--chi", "2,-1", "--sigma", "2,1"],
        vec!["accept", "--only", "11"],
    ] {
        let o = foldlab(&args, None);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        let v = json(&o);
        assert!(v["error"]["message"].is_string(), "{args:?}");
    }
}

#[test]
fn subcommands_report_and_pass() {
    for args in [
        vec!["lr", "--n", "4", "--lhs", "4,2,2", "--rhs", "2,2"],
        vec!["witness-nonmonoidal"],
        vec!["invariants", "--algebra", "sl4"],
        vec!["mf", "--algebra", "sl3", "--chi", "1,2,-3"],
        vec!["section-check", "--pair", "sl4:sp4"],
        vec!["oper", "residue", "--algebra", "sl3", "--lambda", "1,0"],
        vec!["spectrum", "--algebra", "sl4", "--weight", "0,1,0", "--sigma", "3,2,1"],
        vec!["accept", "--only", "4"],
    ] {
        let o = foldlab(&args, None);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let lr = json(&foldlab(&["lr", "--n", "4", "--lhs", "4,2,2", "--rhs", "2,2"], None));
    assert_eq!(lr["6,3,2,1"], 1);
    let sp = json(&foldlab(&["spectrum", "--algebra", "sl4", "--weight", "0,1,0", "--sigma", "3,2,1"], None));
    assert_eq!(sp["sigma"]["fixed_lines"], 4);
    assert_eq!(sp["sigma"]["minus_lines"], 0);
}

#[test]
fn mf_at_zero_reports_rank_drop() {
    let o = foldlab(&["mf", "--algebra", "sl2", "--chi", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["independent"], false);
    assert_eq!(v["chi_regular"], false);
}

#[test]
fn oper_reduce_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conn.json");
    // d + f + h + 2t e
    std::fs::write(&path, r#"{"algebra":"sl2","coeffs":[["1","0","1"],["0","2","0"]]}"#).unwrap();
    let o = foldlab(&["oper", "reduce", "--algebra", "sl2", "--order", "4", "--input", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["coeffs"], serde_json::json!([["1", "2", "0", "0"]]));
    let bad = foldlab(&["oper", "reduce", "--algebra", "sl3", "--input", path.to_str().unwrap()], None);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn deterministic_output_and_cache_hits() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["twining", "--type", "A", "--rank", "3", "--perm", "3,2,1", "--weight", "1,1,1"];
    let cold = foldlab(&args, Some(dir.path()));
    let warm = foldlab(&args, Some(dir.path()));
    let uncached = foldlab(&args, None);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 2);
    // corrupt every entry; the next run recomputes and rewrites them
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap().replace("\"pass\":true", "\"pass\":false");
        std::fs::write(&p, text).unwrap();
    }
    let again = foldlab(&args, Some(dir.path()));
    assert_eq!(again.stdout, cold.stdout);
    let s1 = foldlab(&["--seed", "5", "spectrum", "--algebra", "sl3", "--weight", "1,0"], None);
    let s2 = foldlab(&["spectrum", "--algebra", "sl3", "--weight", "1,0", "--seed", "5"], None);
    assert_eq!(s1.stdout, s2.stdout);
    assert_eq!(json(&s1)["spectrum"]["seed"], 5);
}

#[test]
fn pretty_output_parses_to_the_same_value() {
    let a = json(&foldlab(&["invariants", "--algebra", "sl2"], None));
    let b = json(&foldlab(&["invariants", "--algebra", "sl2", "--output", "pretty"], None));
    assert_eq!(a, b);
}
