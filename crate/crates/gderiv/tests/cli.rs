use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn presentation(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presentations").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gderiv")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out) = run(&all);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn reduce_cancels() {
    let (code, out) = run(&["group", "reduce", "x1 x2 x2^-1 x1^-1 x2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "x2\n");
}

#[test]
fn reduce_in_s3() {
    let s3 = presentation("s3.grp");
    let (_, out) = run(&["--group", &s3, "group", "reduce", "a^4 b^3"]);
    assert_eq!(out, "a b\n");
}

#[test]
fn counterexample_report() {
    let (code, doc) = run_json(&["demo", "counterexample"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["additivity"], "pass");
    assert_eq!(doc["loops_at_x1"], "zero");
    assert_eq!(doc["ff"], "fail");
    assert_eq!(doc["ff_path_sum"], "1");
    assert_eq!(doc["offending_paths"], 1);
}

#[test]
fn s3_solution_space() {
    for file in ["s3.grp", "s3_table.grp"] {
        let g = presentation(file);
        let (code, doc) = run_json(&["--group", &g, "--radius", "inf", "constraints", "solve"]);
        assert_eq!(code, 0);
        assert_eq!(doc["dimension"], 3);
        assert_eq!(doc["unknowns"], 12);
    }
}

#[test]
fn seeded_output_is_reproducible() {
    let a = run(&["--seed", "5", "--json", "demo", "dictionary", "--count", "6"]);
    let b = run(&["--seed", "5", "--json", "demo", "dictionary", "--count", "6"]);
    assert_eq!(a, b);
    let doc: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(doc["dictionary"], "pass");
}

#[test]
fn errors_as_json() {
    let (code, doc) = run_json(&["group", "reduce", "x3"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "syntax");
    let (code, doc) = run_json(&["--group", "/nonexistent.grp", "group", "info"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "io");
}

#[test]
fn extract_and_rebuild_through_files() {
    let dir = std::env::temp_dir().join(format!("gderiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("table.json");
    let (code, out) = run(&["--radius", "3", "--witness-radius", "1", "char", "extract", "--op", "inner:x1 - 2*x2"]);
    assert_eq!(code, 0);
    std::fs::write(&table, &out).unwrap();
    let (code, doc) = run_json(&["char", "additivity", "--char", &format!("table:{}", table.display())]);
    assert_eq!(code, 0);
    assert_eq!(doc["additivity"], "pass");
    let (code, out) = run(&["char", "rebuild", table.to_str().unwrap()]);
    assert_eq!(code, 0);
    let op = dir.join("op.json");
    std::fs::write(&op, &out).unwrap();
    let (_, doc) = run_json(&["deriv", "apply", "x1", "--op", &format!("file:{}", op.display())]);
    assert_eq!(doc["result"], "2*x1 x2 - 2*x2 x1");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn constraint_exports() {
    let dir = std::env::temp_dir().join(format!("gderiv-mm-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mm = dir.join("sys.mtx");
    let legend = dir.join("legend.json");
    let g = presentation("z2.grp");
    let (code, doc) = run_json(&[
        "--group", &g, "--radius", "1", "constraints", "build",
        "--mm", mm.to_str().unwrap(), "--legend", legend.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&mm).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n"));
    let leg: Value = serde_json::from_str(&std::fs::read_to_string(&legend).unwrap()).unwrap();
    assert_eq!(leg["unknowns"].as_array().unwrap().len(), doc["unknowns"].as_u64().unwrap() as usize);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_rejects_inconsistent_character() {
    let dir = std::env::temp_dir().join(format!("gderiv-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let chr = dir.join("bad.json");
    std::fs::write(
        &chr,
        r#"{"schema_version":1,"base_values":[
            {"source":"e","witness":"b","value":"1"},
            {"source":"e","witness":"b^-1","value":"7"}]}"#,
    )
    .unwrap();
    let g = presentation("z2.grp");
    let (code, doc) = run_json(&["--group", &g, "constraints", "verify", "--char", &format!("char:{}", chr.display())]);
    assert_eq!(code, 0);
    assert_eq!(doc["verify"], "fail");
    let v = &doc["violations"][0];
    assert_eq!(v["object"], "e");
    assert_eq!(v["sum"], "8");
    assert_eq!(v["chain"].as_array().unwrap().len(), 4);
    let (_, doc) = run_json(&["--group", &g, "constraints", "verify", "--char", "identity:a=1,b=2"]);
    assert_eq!(doc["verify"], "pass");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn gamma_dot_and_stabilizer() {
    let (code, out) = run(&["groupoid", "gamma", "x1", "x1", "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph gamma {"));
    let (code, doc) = run_json(&["char", "extend-stab", "x1", "--chi", "x1=1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["additivity"], "pass");
    let (code, doc) = run_json(&["char", "extend-stab", "x1", "--chi", "x2=1"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "stabilizer");
}

#[test]
fn leibniz_and_relators() {
    let (_, doc) = run_json(&["deriv", "leibniz", "--op", "gens:x1=x2 - e;x2=x1"]);
    assert_eq!(doc["leibniz"], "pass");
    let s3 = presentation("s3.grp");
    let (_, doc) = run_json(&["--group", &s3, "deriv", "relcheck", "--gen", "a=e"]);
    assert_eq!(doc["relators"], "fail");
    let idx: Vec<u64> = doc["failures"].as_array().unwrap().iter().map(|f| f["index"].as_u64().unwrap()).collect();
    assert_eq!(idx, vec![0, 2]);
}
