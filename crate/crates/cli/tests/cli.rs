use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bloch")).args(args).env_remove("BLOCH_TOL_R").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn fig8(mode: &str) -> Output {
    run(&["class", &fixture("fig8_triangulation.json"), &fixture("fig8_decoration.json"), "--mode", mode])
}

#[test]
fn verify_gz_passes() {
    let out = run(&["verify", "gz", "--samples", "200", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["suite"], "gz");
    assert_eq!(report["passed"], true);
    assert!(report["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "all", "--samples", "50"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["verify", "corsum", "--samples", "30", "--seed", "11"]);
    let b = run(&["verify", "corsum", "--samples", "30", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "corsum", "--samples", "30", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(code(&run(&["verify", "bogus"])), 2);
    assert_eq!(code(&run(&["verify", "gz", "--samples", "0"])), 2);
    assert_eq!(code(&run(&["class", "missing.json", "missing.json"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn tolerance_from_environment() {
    let strict = Command::new(env!("CARGO_BIN_EXE_bloch"))
        .args(["verify", "gz", "--samples", "20"])
        .env("BLOCH_TOL_R", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&strict), 4);
    assert_eq!(json(&strict)["passed"], false);
    let bad = Command::new(env!("CARGO_BIN_EXE_bloch"))
        .args(["verify", "gz", "--samples", "20"])
        .env("BLOCH_TOL_R", "abc")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    // The flag wins over the environment.
    let flag = Command::new(env!("CARGO_BIN_EXE_bloch"))
        .args(["verify", "gz", "--samples", "20", "--tol-r", "1e-8"])
        .env("BLOCH_TOL_R", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&flag), 0);
}

#[test]
fn figure_eight_class() {
    let out = fig8("sl2");
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!((r["volume"].as_f64().unwrap().abs() - 2.029883212819).abs() < 1e-6);
    assert!(r["cs"].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(r["class"].as_array().unwrap().len(), 2);

    let t = json(&fig8("tensor"));
    assert_eq!(t["R"]["modulus"], "4pi2");

    let out = fig8("theorem1");
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!(r["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(r["lhs_R"]["modulus"], "4pi2");
}

#[test]
fn non_generic_input_is_a_precondition_failure() {
    let dir = std::env::temp_dir().join(format!("bloch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tri = dir.join("tri.json");
    let dec = dir.join("dec.json");
    std::fs::write(&tri, r#"{"simplices":[{"vertices":["a","b","c","d"],"orientation":1}],"gluings":[]}"#).unwrap();
    let m = |a: f64, b: f64, c: f64, d: f64| format!("[[[{a},0],[{b},0]],[[{c},0],[{d},0]]]");
    let doc = format!(
        r#"{{"n":2,"cosets":{{"a":{},"b":{},"c":{},"d":{}}}}}"#,
        m(1.0, 0.0, 0.0, 1.0),
        m(1.0, 0.0, 0.0, 1.0),
        m(1.0, 0.0, 1.0, 1.0),
        m(2.0, 1.0, 1.0, 1.0)
    );
    std::fs::write(&dec, doc).unwrap();
    let out = run(&["class", tri.to_str().unwrap(), dec.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn knot_commands() {
    let v = json(&run(&["knot", "value", "2,2"]));
    assert_eq!(v["fraction"], "2/5");
    let f = json(&run(&["knot", "family", "--n", "2"]));
    assert_eq!(f["fraction"], "70/169");
    assert_eq!(f["twist_number"], 6);
    let s = json(&run(&["knot", "symmetry", "2,3"]));
    assert_eq!(s["symmetric"], false);

    let out = run(&["knot", "ors", "--b", "2,2", "--eps", "1,1,1", "--c", "0", "--ci", "0,0", "--expect", "70/169"]);
    assert_eq!(code(&out), 0);
    let o = json(&out);
    assert_eq!(o["collapsed_value"]["fraction"], "38/85");
    assert_eq!(o["matches_expected"], false);
    assert_eq!(o["degree"], 1);

    let o = json(&run(&["knot", "ors", "--b", "2,3", "--eps", "1,-1", "--c", "0", "--ci", "0"]));
    assert!(o["raw_value"]["degenerate"].is_string());
    assert_eq!(o["degree"], 2);
    assert_eq!(code(&run(&["knot", "value", "0"])), 3);
}

#[test]
fn reps_commands() {
    let t = json(&run(&["reps", "table"]));
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["rep"], "rho4");
    assert_eq!((rows[0]["volume"].as_i64(), rows[0]["cs"].as_i64()), (Some(10), Some(10)));
    let out = run(&["reps", "check", "--n", "2..5", "--samples", "20", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["passed"], true);
}
