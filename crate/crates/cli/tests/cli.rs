use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn model(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("models")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn term_commands() {
    let o = run(&["normalize", "1 wr[5] Z"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "Z\n"));
    let o = run(&["eq", "Z wr[1] Z", "Z x Z"]);
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["eq", "1", "Z"]);
    assert_eq!(stdout(&o), "false\n");
    assert_eq!(stdout(&run(&["order", "Z_2 wr Z_2 wr Z_2"])), "128\n");
    assert_eq!(stdout(&run(&["order", "Z x Z_2"])), "infinite\n");
    assert_eq!(stdout(&run(&["solvable", "Z x Z wr[2] Z wr[3] Z"])), "3\n");
    assert_eq!(stdout(&run(&["q", "Z wr[3] Z"])), "Z_3\n");
}

#[test]
fn q_rejects_non_p_terms() {
    let o = run(&["q", "Z_2 wr Z_3"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    let json: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(json["kind"], "domain");
}

#[test]
fn element_commands() {
    let o = run(&["mul", "Z_3 wr Z_2", "([1,2];1)", "([2,0];1)"]);
    assert_eq!(stdout(&o), "([1,1];0)\n");
    let o = run(&["inv", "Z wr[2] Z", "([3,-1];2)"]);
    assert_eq!(stdout(&o), "([-3,1];-2)\n");
    let o = run(&["mul", "Z_3 wr Z_2", "([1];1)", "([2,0];1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn realize_then_compute() {
    let out = scratch("realized.json");
    let o = run(&[
        "realize",
        "--term",
        "(Z wr[2] Z) x Z",
        "--genus",
        "1",
        "--boundary",
        "2",
        "--target",
        "s1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{:?}", o);
    let o = run(&["validate", out.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "valid\n"));
    assert!(o.stderr.is_empty());
    let o = run(&["compute", out.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["pi1"], "Z x Z wr[2] Z");
    assert_eq!(json["graph_group"], "Z_2");
}

#[test]
fn realize_rejects_excluded_surfaces() {
    let o = run(&["realize", "--term", "Z", "--genus", "0", "--boundary", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "realize",
        "--term",
        "Z_2",
        "--genus",
        "2",
        "--boundary",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validate_reports_errors() {
    let bad = scratch("bad_model.json");
    std::fs::write(
        &bad,
        r#"{"surface":{"genus":0,"boundary":0,"target":"R"},
            "pieces":[{"kind":"disk","root":{"node":{"saddles":3,"m":1,
            "invariant":[{"leaf":"nondeg"}],"orbits":[{"leaf":"nondeg"}]}}}]}"#,
    )
    .unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = String::from_utf8_lossy(&o.stderr)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines
        .iter()
        .any(|d| d["message"].as_str().unwrap().contains("surface excluded")));
    assert!(lines.iter().any(|d| d["path"] == "pieces[0].root.node"));
    let o = run(&["compute", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_model_is_a_parse_error() {
    let bad = scratch("malformed.json");
    std::fs::write(
        &bad,
        "{\"surface\": {\"genus\": 0,\n \"boundary\": 1, \"colour\": 2}}",
    )
    .unwrap();
    let o = run(&["compute", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let json: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&o.stderr).lines().next().unwrap()).unwrap();
    assert_eq!(json["kind"], "parse");
    assert!(json["offset"].as_u64().unwrap() > 25);
}

#[test]
fn kr_writes_dot() {
    let dot = scratch("fig5.dot");
    let o = run(&["kr", &model("fig5.json"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["vertices"], 6);
    assert_eq!(json["aut_count"], "6");
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph kr_0 {\n  0 [label=\"root\"];"));
    assert_eq!(text.matches("->").count(), 5);
}

#[test]
fn report_json() {
    let o = run(&["report", &model("fig5.json")]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["pi1"], "Z");
    assert_eq!(json["graph_group"], "Z_3");
    assert_eq!(json["graph_order"], 3);
    assert_eq!(json["solvable_bound"], 1);
    assert!(json["generic_rank"].is_null());
    assert!(json["notes"].as_array().unwrap().len() >= 3);

    let o = run(&["report", &model("two_maxima.json")]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["generic_rank"], 1);
}

#[test]
fn randomized_commands_are_reproducible() {
    let a = run(&["roundtrip", "--count", "50", "--depth", "4", "--seed", "9"]);
    let b = run(&["roundtrip", "--count", "50", "--depth", "4", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(json["passed"], 50);

    let a = run(&["selftest", "--seed", "4"]);
    let b = run(&["selftest", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a).lines().filter(|l| l.starts_with("PASS")).count(),
        10
    );
}
