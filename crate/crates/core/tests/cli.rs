use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn sepline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepline")).args(args).env_remove("SEPLINE_SEED").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_variants_and_check() {
    let pts4 = data("pts4.json");
    for variant in ["axis", "general", "wedge"] {
        let o = sepline(&["solve", p(&pts4), "--variant", variant, "--check"]);
        assert_eq!(code(&o), 0, "{variant}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["variant"], variant);
    }
    let o = sepline(&["solve", p(&data("diag.json")), "--variant", "axis"]);
    assert_eq!(json(&o)["size"], 2);
    assert_eq!(json(&o)["kappa"], 2);
}

#[test]
fn report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let inst = data("diag.json");
    for r in [&a, &b] {
        let o = sepline(&["solve", p(&inst), "--check", "--report", p(&dir.path().join("report.json"))]);
        assert_eq!(code(&o), 0);
        fs::rename(dir.path().join("report.json"), r).unwrap();
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["oracle"]["agrees"], true);
    assert_eq!(report["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"kind\": \"circle\", \"points\": [").unwrap();
    assert_eq!(code(&sepline(&["solve", p(&bad)])), 1);
    assert_eq!(code(&sepline(&["kappa", p(&dir.path().join("missing.json"))])), 1);
    let off = dir.path().join("off.json");
    fs::write(&off, r#"{"kind":"circle","points":[{"color":"R","x":"1/2","y":"1/2"}]}"#).unwrap();
    assert_eq!(code(&sepline(&["solve", p(&off)])), 1);
    assert_eq!(code(&sepline(&["gen", "--n", "5", "--pattern", "chunked:2,2"])), 1);
    assert_eq!(code(&sepline(&["frobnicate"])), 1);
}

#[test]
fn kappa_diagnostics() {
    let o = sepline(&["kappa", p(&data("pts4.json"))]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["w"], 4);
    assert_eq!(v["switch_graph"]["kappa"], 2);
    assert_eq!(v["switch_graph"]["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_commands() {
    let pts4 = data("pts4.json");
    let o = sepline(&["oracle", p(&pts4), "--variant", "axis"]);
    assert_eq!((code(&o), json(&o)["size"].clone()), (0, Value::from(2)));
    let o = sepline(&["oracle", p(&data("diag.json")), "--variant", "general"]);
    assert_eq!(json(&o)["size"], 1);
    let o = sepline(&["oracle", p(&pts4), "--variant", "pq", "--p", "2", "--q", "0"]);
    assert_eq!((code(&o), json(&o)["feasible"].clone()), (0, Value::from(true)));
    let o = sepline(&["oracle", p(&pts4), "--variant", "pq", "--p", "1", "--q", "0"]);
    assert_eq!((code(&o), json(&o)["feasible"].clone()), (2, Value::from(false)));
    assert_eq!(code(&sepline(&["oracle", p(&pts4), "--variant", "pq"])), 1);
}

#[test]
fn reduce_lift_extract_verify_render() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, layout, sol) = (dir.path().join("i.json"), dir.path().join("l.json"), dir.path().join("s.json"));
    let o = sepline(&["reduce", p(&data("crbds_toy.json")), "--out", p(&inst), "--layout", p(&layout)]);
    assert_eq!(code(&o), 0);
    let o = sepline(&["lift", "--layout", p(&layout), "--set", "u1,u3"]);
    assert_eq!(code(&o), 0);
    let lifted = json(&o);
    assert_eq!((lifted["p"].clone(), lifted["q"].clone(), lifted["size"].clone()), (4.into(), 3.into(), 7.into()));
    fs::write(&sol, &o.stdout).unwrap();
    let o = sepline(&["extract", "--layout", p(&layout), "--lines", p(&sol)]);
    assert_eq!(json(&o)["set"], serde_json::json!(["u1", "u3"]));
    let o = sepline(&["verify", p(&inst), "--lines", p(&sol)]);
    assert_eq!((code(&o), json(&o)["separated"].clone()), (0, Value::from(true)));
    assert_eq!(code(&sepline(&["lift", "--layout", p(&layout), "--set", "u2,u4"])), 1);

    let fence = dir.path().join("fence.json");
    fs::write(&fence, r#"[{"orient":"H","c":"50"}]"#).unwrap();
    assert_eq!(code(&sepline(&["verify", p(&inst), "--lines", p(&fence)])), 2);
    assert_eq!(code(&sepline(&["extract", "--layout", p(&layout), "--lines", p(&fence)])), 2);

    let svg = dir.path().join("t.svg");
    let o = sepline(&["render", p(&inst), "--layout", p(&layout), "--lines", p(&sol), "--out", p(&svg)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="point "#).count(), 22);
    assert_eq!(text.matches(r#"class="sep""#).count(), 7);
}

#[test]
fn sandwich_reduction_lifts_the_hard_toy_set() {
    let dir = tempfile::tempdir().unwrap();
    let layout = dir.path().join("l.json");
    let o = sepline(&["reduce", p(&data("crbds_toy.json")), "--layout", p(&layout), "--normalization", "sandwich"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["points"].as_array().unwrap().len(), 62);
    let o = sepline(&["lift", "--layout", p(&layout), "--set", "u2,u3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["method"], "canonical");
}

#[test]
fn gen_seed_from_env() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_sepline"))
            .args(["gen", "--n", "7", "--pattern", "random"])
            .env("SEPLINE_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("11"), run("11"));
    assert_ne!(run("11"), run("12"));
    let flag = sepline(&["gen", "--n", "7", "--pattern", "random", "--seed", "11"]).stdout;
    assert_eq!(flag, run("11"));
}

#[test]
fn batch_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["pts4.json", "diag.json"] {
        fs::copy(data(f), dir.path().join(f)).unwrap();
    }
    fs::write(dir.path().join("broken.json"), "not json").unwrap();
    let out = dir.path().join("out");
    let o = sepline(&["solve", "--batch", p(dir.path()), "--out", p(&out)]);
    assert_eq!(code(&o), 1);
    let lines: Vec<Value> =
        String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert!(out.join("pts4.solution.json").exists() && out.join("diag.solution.json").exists());

    let trace = dir.path().join("trace");
    assert_eq!(code(&sepline(&["solve", p(&data("diag.json")), "--trace", p(&trace)])), 0);
    assert!(fs::read_dir(&trace).unwrap().count() >= 1);
}
