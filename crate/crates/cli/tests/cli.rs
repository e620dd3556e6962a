use std::process::{Command, Output};

fn isotopy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isotopy")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SL2: &str = r#"{"model":"sl","r":1,"coord":{"kind":"laurent","n":1}}"#;

#[test]
fn lists_the_catalogue() {
    let o = isotopy(&["scenario", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["thm-6-chi-sl2-n1", "quadform-classify-n2", "octonion-alternative", "spin-sigma-obstruction"] {
        assert!(text.lines().any(|l| l == name), "{name} missing");
    }
}

#[test]
fn scenario_reports_are_reproducible() {
    let a = isotopy(&["--json", "scenario", "run", "quadform-classify-n2"]);
    let b = isotopy(&["--json", "scenario", "run", "quadform-classify-n2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["steps"][0]["values"]["orbit_sizes"], serde_json::json!([1, 1, 3, 3]));
}

#[test]
fn wrong_expectation_exits_one_with_a_diff() {
    let o = isotopy(&["scenario", "run", "corrupted-expectation"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expectation not met"));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(isotopy(&["torus", "check", "--spec", r#"{"kind":"klein"}"#]).status.code(), Some(2));
    assert_eq!(isotopy(&["torus", "frobnicate"]).status.code(), Some(2));
    assert_eq!(isotopy(&["scenario", "run", "no-such-scenario"]).status.code(), Some(2));
    let inadmissible = isotopy(&["lietorus", "isotope", "--spec", r#"{"model":"tkk","coord":{"kind":"spin","n":3}}"#, "--shift", "1,1,0"]);
    assert_eq!(inadmissible.status.code(), Some(2));
}

#[test]
fn torus_commands() {
    let o = isotopy(&["--window", "1", "torus", "check", "--spec", r#"{"kind":"quantum","q":[[1,-1],[-1,1]]}"#, "--involution", r#"{"e":[1,1]}"#]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("associativity"));
    let o = isotopy(&["--json", "torus", "invariants", "--spec", r#"{"kind":"spin","n":3}"#]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sigma"], serde_json::json!([0, 0, 0]));
    let o = isotopy(&["--json", "--window", "1", "torus", "isotope", "--spec", r#"{"kind":"spin","n":3}"#, "--u", "-1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sigma"], serde_json::json!([1, 0, 0]));
}

#[test]
fn quadform_commands() {
    let o = isotopy(&["--json", "quadform", "classify", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
    let a = r#"{"n":2,"b":[1,0],"a":[[0,0],[0,0]]}"#;
    let b = r#"{"n":2,"b":[0,1],"a":[[0,0],[0,0]]}"#;
    let c = r#"{"n":2,"b":[1,1],"a":[[0,1],[0,0]]}"#;
    let v: serde_json::Value = serde_json::from_slice(&isotopy(&["--json", "quadform", "isometric", "--a", a, "--b", b]).stdout).unwrap();
    assert_eq!(v["isometric"], true);
    let v: serde_json::Value = serde_json::from_slice(&isotopy(&["--json", "quadform", "isometric", "--a", a, "--b", c]).stdout).unwrap();
    assert_eq!(v["isometric"], false);
}

#[test]
fn lie_torus_commands() {
    let sl3 = r#"{"model":"sl","r":2,"coord":{"kind":"quantum","q":[[1,-1],[-1,1]]}}"#;
    assert_eq!(isotopy(&["lietorus", "check", "--spec", sl3, "--samples", "300"]).status.code(), Some(0));
    assert_eq!(isotopy(&["lietorus", "iso", "--spec", sl3, "--kind", "diag", "--shift", "1,0;0,1"]).status.code(), Some(0));
    assert_eq!(isotopy(&["lietorus", "iso", "--spec", sl3, "--kind", "diag", "--shift", "1,0;0,1", "--perturb"]).status.code(), Some(1));
    let o = isotopy(&["lietorus", "build", "--spec", sl3]);
    assert!(stdout(&o).contains("dim L_"));
}

#[test]
fn eala_commands_and_out_file() {
    let dir = std::env::temp_dir().join(format!("isotopy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("eala.json");
    let o = isotopy(&["--window", "1", "eala", "build", "--spec", SL2, "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["degree_zero_dim"], 5);
    assert_eq!(v["h_dim"], 3);
    let out = dir.join("chi.json");
    let o = isotopy(&["--out", out.to_str().unwrap(), "eala", "chi", "--spec", SL2, "--shift", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.exists());
    assert_eq!(isotopy(&["eala", "chi", "--spec", SL2, "--shift", "1", "--verify", "--perturb"]).status.code(), Some(1));
    let tkk = r#"{"model":"tkk","coord":{"kind":"spin","n":3}}"#;
    assert_eq!(isotopy(&["eala", "build", "--spec", tkk]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scenario_from_file() {
    let dir = std::env::temp_dir().join(format!("isotopy-scn-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    std::fs::write(
        &path,
        r#"{"name":"mine","steps":[{"label":"q","op":"quadform_classify","n":1}],
            "expectations":[{"expect":"value","step":"q","key":"classes","value":2}]}"#,
    )
    .unwrap();
    let o = isotopy(&["scenario", "run", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}
