use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn frs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frs")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("frs-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.0.join(name);
        fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

const MEDIUM: &str = r#"{"code":"frs","q":409,"s":8,"n":51,"d":101}"#;

#[test]
fn encode_then_decode_without_errors() {
    let dir = Scratch::new("clean");
    let params = dir.file("params.json", r#"{"code":"frs","q":13,"s":3,"n":4,"d":3}"#);
    let message = dir.file("message.json", r#"{"message":[0,1]}"#);
    let word = dir.path("word.json");
    assert!(frs(&["encode", "--params", &params, "--message", &message, "--out", &word]).status.success());
    let encoded: Value = serde_json::from_str(&fs::read_to_string(&word).unwrap()).unwrap();
    assert_eq!(encoded["columns"][0], serde_json::json!([1, 2, 4]));
    let list = dir.path("list.json");
    let space = stdout_json(&frs(&["decode", "--params", &params, "--word", &word, "--m", "2", "--list", &list]));
    assert_eq!(space["offset"], serde_json::json!([0, 1]));
    assert_eq!(space["basis"], serde_json::json!([]));
    let listed: Value = serde_json::from_str(&fs::read_to_string(&list).unwrap()).unwrap();
    assert_eq!(listed, serde_json::json!({"messages": [[0, 1]]}));
}

#[test]
fn seeded_pipeline_is_byte_identical() {
    let dir = Scratch::new("seeded");
    let params = dir.file("params.json", MEDIUM);
    let message = dir.file("message.json", r#"{"message":[5,4,3,2,1]}"#);
    let word = dir.path("word.json");
    assert!(frs(&["encode", "--params", &params, "--message", &message, "--out", &word]).status.success());
    let run = || {
        let noisy = frs(&["corrupt", "--params", &params, "--word", &word, "--errors", "25", "--seed", "42"]);
        assert!(noisy.status.success());
        let noisy_path = dir.file("noisy.json", &String::from_utf8(noisy.stdout.clone()).unwrap());
        let decoded = frs(&["decode", "--params", &params, "--word", &noisy_path, "--m", "3"]);
        (noisy.stdout, decoded.stdout)
    };
    let first = run();
    assert_eq!(first, run());
    let space: Value = serde_json::from_slice(&first.1).unwrap();
    assert_eq!(space["offset"], serde_json::json!([5, 4, 3, 2, 1]));
}

#[test]
fn too_many_errors_is_not_a_failure() {
    let dir = Scratch::new("beyond");
    let params = dir.file("params.json", MEDIUM);
    let message = dir.file("message.json", r#"{"message":[7]}"#);
    let word = dir.path("word.json");
    assert!(frs(&["encode", "--params", &params, "--message", &message, "--out", &word]).status.success());
    let noisy = dir.path("noisy.json");
    assert!(frs(&["corrupt", "--params", &params, "--word", &word, "--errors", "40", "--seed", "1", "--out", &noisy]).status.success());
    let out = frs(&["decode", "--params", &params, "--word", &noisy, "--m", "3"]);
    assert!(out.status.success());
}

#[test]
fn recover_from_sets() {
    let dir = Scratch::new("recover");
    let params = dir.file("params.json", r#"{"code":"frs","q":13,"s":3,"n":4,"d":3}"#);
    // Codeword of X with a second candidate per column.
    let sets = dir.file(
        "sets.json",
        r#"{"ell":2,"sets":[[[1,2,4],[0,0,0]],[[8,3,6],[1,1,1]],[[12,11,9],[2,2,2]],[[5,10,7],[3,3,3]]]}"#,
    );
    let list = dir.path("list.json");
    let space = stdout_json(&frs(&["recover", "--params", &params, "--sets", &sets, "--m", "2", "--list", &list]));
    assert!(space["offset"].is_array());
    let listed: Value = serde_json::from_str(&fs::read_to_string(&list).unwrap()).unwrap();
    assert!(listed["messages"].as_array().unwrap().contains(&serde_json::json!([0, 1])));
}

#[test]
fn bounds_examples() {
    let fixed = stdout_json(&frs(&["bounds", "--m", "3", "--s", "1000000", "--R", "1/3"]));
    assert_eq!(fixed["L_fixed_m"], "12");
    let m2 = stdout_json(&frs(&["bounds", "--m", "2", "--s", "5", "--R", "1/3"]));
    assert_eq!((m2["L_m2"].as_str(), m2["radius"].as_str()), (Some("12/5"), Some("7/18")));
    let main = stdout_json(&frs(&["bounds", "--eps", "0.5"]));
    assert_eq!(main["L_main"]["exact"], "256");
    assert!(main["omitted"].as_array().unwrap().iter().any(|o| o["bound"] == "radius"));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(frs(&["bounds", "--eps", "zero"]).status.code(), Some(1));
    assert_eq!(frs(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(frs(&["encode", "--params", "/nonexistent.json", "--message", "/nonexistent.json"]).status.code(), Some(1));
    let dir = Scratch::new("bad");
    let params = dir.file("params.json", r#"{"code":"frs","q":12,"s":3,"n":4,"d":3}"#);
    let message = dir.file("message.json", r#"{"message":[1]}"#);
    assert_eq!(frs(&["encode", "--params", &params, "--message", &message]).status.code(), Some(1));
    assert_eq!(frs(&["--help"]).status.code(), Some(0));
}

#[test]
fn experiments_report_json() {
    let s2 = stdout_json(&frs(&["exp-singleton2", "--trials", "20", "--seed", "3"]));
    assert_eq!(s2["within"]["violations"], 0);
    assert_eq!(s2["within"]["recovered"], 20);
    assert_eq!(s2["beyond"]["within_radius"], false);
    let listsize = stdout_json(&frs(&["exp-listsize", "--trials", "4", "--seed", "3"]));
    assert_eq!(listsize["bound"], "12");
    let prune = stdout_json(&frs(&["exp-prune", "--trials", "10", "--seed", "3"]));
    assert_eq!(prune["miss_rate_ok"], true);
    let sub = stdout_json(&frs(&["exp-subspace", "--trials", "3", "--seed", "3"]));
    assert_eq!(sub["violations"], 0);
    let again = frs(&["exp-subspace", "--trials", "3", "--seed", "3"]);
    assert_eq!(serde_json::from_slice::<Value>(&again.stdout).unwrap(), sub);
}
