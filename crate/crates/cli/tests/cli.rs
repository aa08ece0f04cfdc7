use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subsys")).args(args).env_remove("SUBSYS_MAX_ENUM").output().unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn bracket(v: &Value) -> (u64, u64, u64, u64, &str) {
    (
        v["n"].as_u64().unwrap(),
        v["k"].as_u64().unwrap(),
        v["r"].as_u64().unwrap(),
        v["d"]["value"].as_u64().unwrap(),
        v["d"]["kind"].as_str().unwrap(),
    )
}

#[test]
fn cosets_and_bch_sets() {
    let mut c: Vec<u64> = serde_json::from_value(json_of(&["coset", "--n", "31", "--q", "4", "--x", "3"])).unwrap();
    c.sort();
    assert_eq!(c, [3, 6, 12, 17, 24]);
    let all = json_of(&["coset", "--n", "15", "--q", "2"]);
    assert_eq!(all.as_array().unwrap().len(), 5);
    let ds = json_of(&["bch-ds", "--n", "31", "--q", "4", "--delta", "5"]);
    assert_eq!(ds["leaders"], json!([1, 3]));
    assert_eq!(ds["bch_bound"], 5);
}

#[test]
fn enumerate_t_for_the_example() {
    let v = json_of(&["enumerate-T", "--n", "31", "--q", "4", "--delta", "5"]);
    assert_eq!(v["dim_d"], 10);
    assert_eq!(v["achievable_r"], json!([0, 1, 10, 11]));
    assert_eq!(v["truncated"], false);
}

#[test]
fn construct_families() {
    let v = json_of(&["construct", "bch", "--q", "2", "--m", "4", "--delta", "3", "--r", "1"]);
    assert_eq!(bracket(&v), (15, 6, 1, 3, "exact"));
    let v = json_of(&["construct", "mds", "--item", "v", "--q", "3", "--delta", "1", "--r", "5"]);
    assert_eq!(bracket(&v), (8, 1, 5, 2, "exact"));
    assert_eq!(v["constructive"], true);
    let out = run(&["construct", "mds", "--item", "vii", "--q", "3"]);
    assert!(!out.status.success());
}

#[test]
fn construct_cyclic_and_classical_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let t_d = json_of(&["bch-ds", "--n", "31", "--q", "4", "--delta", "5"]);
    assert_eq!(t_d["leaders"], json!([1, 3]));
    // T_D and T as member lists over (31, 4).
    let members = |reps: &[u64]| -> Vec<u64> {
        let mut out: Vec<u64> = reps
            .iter()
            .flat_map(|&x| json_of(&["coset", "--n", "31", "--q", "4", "--x", &x.to_string()]).as_array().unwrap().clone())
            .map(|v| v.as_u64().unwrap())
            .collect();
        out.sort();
        out
    };
    let body = json!({
        "n": 31, "q": 2, "flavor": "hermitian",
        "t_d": {"n": 31, "q": 4, "members": members(&[0, 1, 3, 5, 11])},
        "t": {"n": 31, "q": 4, "members": members(&[5])},
    });
    fs::write(&spec, body.to_string()).unwrap();
    let v = json_of(&["construct", "cyclic", "--spec", spec.to_str().unwrap()]);
    let (n, k, r, d, _) = bracket(&v);
    assert_eq!((n, k, r), (31, 1, 10));
    assert!(d >= 5);

    let code = dir.path().join("simplex.json");
    let gen = json!([[1, 0, 0, 1, 0, 1, 1], [0, 1, 0, 1, 1, 1, 0], [0, 0, 1, 0, 1, 1, 1]]);
    fs::write(&code, json!({"q": 2, "n": 7, "gen": gen}).to_string()).unwrap();
    let v = json_of(&["verify-classical", "--code", code.to_str().unwrap()]);
    assert_eq!((v["k"].as_u64(), v["d"]["value"].as_u64()), (Some(3), Some(4)));
    let v = json_of(&["construct", "euclid", "--code", code.to_str().unwrap()]);
    assert_eq!(bracket(&v), (7, 1, 0, 3, "exact"));
}

#[test]
fn derive_rules() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("rec.json");
    let parent = json_of(&["construct", "bch", "--q", "2", "--m", "4", "--delta", "3", "--r", "1"]);
    fs::write(&rec, parent.to_string()).unwrap();
    let path = rec.to_str().unwrap();
    let v = json_of(&["derive", "--rule", "thm16", "--in", path]);
    assert_eq!(bracket(&v), (16, 6, 1, 3, "lower_bound"));
    let v = json_of(&["derive", "--rule", "thm8", "--in", path]);
    assert_eq!((v["k"].as_u64(), v["r"].as_u64()), (Some(5), Some(2)));
    let out = run(&["derive", "--rule", "thm18", "--in", path]);
    assert!(!out.status.success());
    let out = run(&["derive", "--rule", "thm99", "--in", path]);
    assert!(!out.status.success());

    // Constructive extension of an additive code.
    let code = dir.path().join("code.json");
    let gens = json!([{"a": [1, 1, 0], "b": [0, 0, 0]}, {"a": [0, 0, 0], "b": [1, 1, 1]}]);
    fs::write(&code, json!({"q": 2, "n": 3, "gens": gens}).to_string()).unwrap();
    let out_code = dir.path().join("ext.json");
    let v = json_of(&["derive", "--rule", "thm16", "--in", code.to_str().unwrap(), "--out-code", out_code.to_str().unwrap()]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["pure_to"], 1);
    let ext: Value = serde_json::from_str(&fs::read_to_string(out_code).unwrap()).unwrap();
    assert_eq!(ext["n"], 4);
}

#[test]
fn tables_and_store() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let store = dir.path().join("store.jsonl");
    let args = ["table", "--q", "2", "--n-max", "9", "--format", "csv", "--out", out.to_str().unwrap(), "--store", store.to_str().unwrap()];
    let status = run(&args);
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("q,n,k,r,d,"));
    let rows = csv.lines().count();
    assert!(rows > 1);
    let stored = fs::read_to_string(&store).unwrap().lines().count();
    assert_eq!(stored, rows - 1);
    assert!(run(&args).status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), csv);

    let md = run(&["table", "--q", "2", "--n-max", "7", "--rules", "none"]);
    assert!(String::from_utf8_lossy(&md.stdout).starts_with("| q | n |"));
    assert!(!run(&["table", "--q", "6", "--n-max", "7"]).status.success());
}

#[test]
fn budget_flag() {
    assert!(!run(&["--budget", "lots", "coset", "--n", "7", "--q", "2"]).status.success());
    let v = json_of(&["--budget", "2^10", "--sequential", "construct", "bch", "--q", "2", "--m", "4", "--delta", "3", "--r", "1"]);
    assert_eq!(v["n"], 15);
}
