//! Every published schema accepts the output it describes.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_str(&text).unwrap()
}

fn check(schema: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&load(schema)).unwrap_or_else(|e| panic!("{schema} does not compile: {e}"));
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:#?}");
}

fn run(args: &[&str], cache: Option<&Path>) -> Value {
    let mut c = Command::new(env!("CARGO_BIN_EXE_foldlab"));
    c.args(args).env_remove("FOLDLAB_CACHE");
    if let Some(dir) = cache {
        c.env("FOLDLAB_CACHE", dir);
    }
    serde_json::from_slice(&c.output().unwrap().stdout).expect("stdout is JSON")
}

#[test]
fn outputs_match_their_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let regular = dir.path().join("regular.json");
    let pole = dir.path().join("pole.json");
    let regular_conn = r#"{"algebra":"sl2","coeffs":[["1","0","1"],["0","2","0"]]}"#;
    let pole_conn = r#"{"algebra":"sl2","pole_order":1,"coeffs":[["1","0","1"],["0","2","0"]]}"#;
    std::fs::write(&regular, regular_conn).unwrap();
    std::fs::write(&pole, pole_conn).unwrap();
    let (regular, pole) = (regular.to_str().unwrap(), pole.to_str().unwrap());
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("fold.schema.json", vec!["fold", "--type", "A", "--rank", "3", "--perm", "3,2,1"]),
        ("fold.schema.json", vec!["fold", "--type", "D", "--rank", "4", "--perm", "3,2,4,1", "--side", "dual"]),
        ("twining.schema.json", vec!["twining", "--type", "A", "--rank", "3", "--perm", "3,2,1", "--weight", "1,0,1"]),
        ("lr.schema.json", vec!["lr", "--n", "4", "--lhs", "2,1", "--rhs", "1"]),
        ("nonmonoidality.schema.json", vec!["witness-nonmonoidal"]),
        ("invariants.schema.json", vec!["invariants", "--algebra", "so5"]),
        ("mf.schema.json", vec!["mf", "--algebra", "sl3", "--chi", "1,2,-3"]),
        ("section_check.schema.json", vec!["section-check", "--pair", "sl4:sp4"]),
        ("canonical_oper.schema.json", vec!["oper", "reduce", "--algebra", "sl2", "--input", regular]),
        ("residue.schema.json", vec!["oper", "residue", "--algebra", "sl2", "--input", pole]),
        ("lambda_residue.schema.json", vec!["oper", "residue", "--algebra", "sl3", "--lambda", "1,0"]),
        ("spectrum.schema.json", vec!["spectrum", "--algebra", "sl3", "--weight", "1,1", "--sigma", "2,1"]),
        ("spectrum.schema.json", vec!["spectrum", "--algebra", "sl2", "--weight", "3"]),
        ("accept.schema.json", vec!["accept", "--only", "2"]),
        ("error.schema.json", vec!["fold", "--type", "A"]),
        ("error.schema.json", vec!["oper", "residue", "--algebra", "sl2", "--input", regular]),
    ];
    for (schema, args) in cases {
        check(schema, &run(&args, None));
    }
    check("oper_connection.schema.json", &serde_json::from_str(pole_conn).unwrap());
    let fold = run(&["fold", "--type", "E", "--rank", "6", "--perm", "6,2,5,4,3,1"], None);
    check("root_datum.schema.json", &fold["folded"]);

    let cache = dir.path().join("cache");
    run(&["twining", "--type", "A", "--rank", "2", "--perm", "2,1", "--weight", "1,1"], Some(&cache));
    for entry in std::fs::read_dir(&cache).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        check("cache_entry.schema.json", &serde_json::from_str(&text).unwrap());
    }
}
