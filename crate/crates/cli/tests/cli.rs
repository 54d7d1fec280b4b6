use std::path::PathBuf;
use std::process::{Command, Output};

fn hfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfree")).args(args).output().expect("binary runs")
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn classify_exit_codes() {
    let g2 = tmp("g2.json", r#"{"matrix": [[2, -1], [-3, 2]]}"#);
    let o = hfree(&["classify", g2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdict"], "Empty");
    assert_eq!(v["evidence"][0]["rule"], "rank2-criterion");
    assert_eq!(v["evidence"][0]["data"]["rs"], 3);

    let a3 = tmp("a3.json", r#"{"matrix": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]}"#);
    let o = hfree(&["classify", a3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["family"], "A");
}

#[test]
fn input_errors_exit_two() {
    let bad = tmp("bad.json", r#"{"matrix": [[2, -1], [0, 2]]}"#);
    let o = hfree(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matrix"));
    let o = hfree(&["classify", tmp("junk.json", "{not json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(hfree(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hfree(&["refute-affine", "--k", "1", "--j", "-1"]).status.code(), Some(2));
}

#[test]
fn build_verify_round_trip_and_corruption() {
    let o = hfree(&["build", "--family", "C", "--params", r#"{"l":3,"a":[1,1,1],"S":[1,2,3]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let good = tmp("c3.json", &text);
    let o = hfree(&["verify", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["holds"], true);

    let corrupted = text.replacen("\"H_1 + 1/2\"", "\"H_1 + 1/3\"", 1);
    assert_ne!(corrupted, text);
    let bad = tmp("c3_bad.json", &corrupted);
    let o = hfree(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failing: Vec<_> = v["relations"].as_array().unwrap().iter().filter(|r| r["holds"] == false).collect();
    assert!(!failing.is_empty());
    assert_ne!(failing[0]["residual"], "0");
}

#[test]
fn output_is_deterministic() {
    let b3 = tmp("b3.json", r#"{"matrix": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]}"#);
    let args = ["obstruct", b3.to_str().unwrap(), "--gen", "2", "--var", "1", "--restrict", "3,1"];
    let a = hfree(&args);
    let b = hfree(&args);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let a = hfree(&["search-rank2", "--r", "1", "--s", "2"]);
    let b = hfree(&["search-rank2", "--r", "1", "--s", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn other_subcommands() {
    let o = hfree(&["refute-affine", "--k", "1", "--j", "2", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict"], "Unsat");

    let sys = tmp("sys.json", r#"{"unknowns": ["x", "y"], "equations": ["x - 1", "x*y - 2"]}"#);
    let o = hfree(&["groebner", sys.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["basis"], serde_json::json!(["y - 2", "x - 1"]));

    let o = hfree(&["build", "--family", "C", "--params", r#"{"l":2,"a":[1,1],"S":[1,2]}"#]);
    let m = tmp("c2.json", &String::from_utf8(o.stdout).unwrap());
    let o = hfree(&["probe-simplicity", m.to_str().unwrap(), "--poly", "H_2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["outcome"]["result"], "constant");

    let o = hfree(&["--format", "text", "search-rank2", "--r", "2", "--s", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("Unsat"));
}
