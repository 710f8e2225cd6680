use std::process::{Command, Output};

fn ratloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratloop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_invocations_succeed() {
    for args in [
        &["theorem1", "--example", "cp1_in_cp3", "--window", "-6:10"][..],
        &["theorem2", "--example", "s3_deg2", "--window", "-3:9"],
        &["hh", "--example", "s2", "--coefficients", "self", "--window", "-2:8"],
        &["felix-injection", "--example", "cp2_deg2"],
        &["corollary", "--example", "s3_deg3"],
        &["maps-pi", "--example", "s2"],
        &["shriek", "--example", "s2xs4_to_s6_deg2"],
        &["loop-model", "--example", "s3", "--hodge"],
        &["validate-pd", "--example", "cp3"],
        &["cohomology", "--example", "s2xs2"],
        &["catalog"],
    ] {
        let o = ratloop(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!stdout(&o).contains("FAIL"), "{args:?}");
    }
}

#[test]
fn hypothesis_failure_exits_one() {
    let o = ratloop(&["theorem2", "--example", "s3_deg0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(ratloop(&["hh", "--example", "no_such_space"]).status.code(), Some(2));
    assert_eq!(ratloop(&["hh", "--example", "s2", "--window", "3"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"generators\": [").unwrap();
    assert_eq!(ratloop(&["cohomology", "--file", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_and_versioned() {
    let dir = tempfile::tempdir().unwrap();
    let (j1, j2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |p: &std::path::Path| {
        vec!["theorem1".to_string(), "--example".into(), "cp1_in_cp2".into(), "--json".into(), p.display().to_string()]
    };
    let run = |p: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_ratloop")).args(args(p)).output().unwrap()
    };
    let (a, b) = (run(&j1), run(&j2));
    assert_eq!(a.stdout, b.stdout);
    let (ja, jb) = (std::fs::read(&j1).unwrap(), std::fs::read(&j2).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "theorem1");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn file_input_matches_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp2.json");
    let spec = ratloop::catalog::lookup("cp2").unwrap().spec.to_json();
    std::fs::write(&path, spec).unwrap();
    let from_file = ratloop(&["hh", "--file", path.to_str().unwrap(), "--window", "-4:12"]);
    let from_example = ratloop(&["hh", "--example", "cp2", "--window", "-4:12"]);
    assert_eq!(from_file.status.code(), Some(0));
    let tables = |o: &Output| stdout(o).lines().skip(1).map(str::to_string).collect::<Vec<_>>();
    assert_eq!(tables(&from_file), tables(&from_example));
}
