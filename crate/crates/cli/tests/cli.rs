use motive_forge::{LPolynomial, TateSum};
use motive_forge_cli::{run, Outcome};
use serde_json::Value;

fn mf(args: &[&str]) -> Outcome {
    run(std::iter::once("motive-forge").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = mf(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 1, "exactly one document");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "motive-forge/1");
    v
}

#[test]
fn weyl_a2() {
    let out = mf(&["weyl", "A2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("order: 6"), "{}", out.stdout);
    assert!(out.stdout.contains("poincare: 1 + 2t + 2t^2 + t^3"), "{}", out.stdout);
    assert!(out.stdout.contains("longest word: s1·s2·s1"), "{}", out.stdout);
    let v = json(&["weyl", "A2", "--json"]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["longest_word"], serde_json::json!([1, 2, 1]));
}

#[test]
fn wonderful_a1_face_json() {
    let v = json(&["wonderful", "A1", "--face", "1", "--json"]);
    assert_eq!(v["histogram"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["orbit_class"], serde_json::json!({"coeffs": [[1, -1], [3, 1]]}));
    assert!(v.get("oracle").is_none());
    let v = json(&["wonderful", "A1", "--face", "1", "--oracle", "--check-duality", "--json"]);
    assert_eq!(v["oracle"]["verdict"], "agree");
    assert_eq!(v["self_dual"], true);
}

#[test]
fn support_reading_is_reported_not_fatal() {
    let v = json(&["wonderful", "A2", "--interpretation", "support", "--check-duality", "--json"]);
    assert_eq!(v["histogram"], serde_json::json!([1, 4, 6, 7, 6, 5, 4, 2, 1]));
    assert_eq!(v["self_dual"], false);
    let v = json(&["wonderful", "A2", "--face", "1", "--interpretation", "support", "--oracle", "--json"]);
    assert_eq!(v["oracle"]["verdict"], "disagree");
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        &["flag", "Z9"][..],
        &["flag", "D3"],
        &["frobnicate"],
        &["wonderful", "A2", "--face", "3"],
        &["wonderful", "A2", "--interpretation", "literal"],
        &["leray-hirsch", "--fiber", "1,2,3,1"],
        &["tower", "Q2/1"],
        &["filtration", "A2", "--base", "1 + x"],
        &["config"],
    ] {
        let out = mf(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
        assert_eq!(out.stderr.lines().count(), 1, "{args:?}: {}", out.stderr);
    }
    let out = mf(&["flag", "Z9"]);
    assert!(out.stderr.contains("Cartan type"), "{}", out.stderr);
}

#[test]
fn computation_errors_exit_one() {
    let out = mf(&["weyl", "E8"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("cap"), "{}", out.stderr);
    let out = mf(&["weyl", "B3", "--cap", "10"]);
    assert_eq!(out.code, 1);
    let out = mf(&["wonderful", "E6"]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert!(out.stderr.contains("cell table"), "{}", out.stderr);
}

#[test]
fn help_exits_zero() {
    let out = mf(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("C2 is normalized to B2"));
}

#[test]
fn flag_and_group_class() {
    let v = json(&["flag", "A2", "--parabolic", "1", "--json"]);
    assert_eq!(v["chow_ranks"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["levi"], "A1");
    assert_eq!(v["self_dual"], true);
    let v = json(&["group-class", "A1", "--central-rank", "1", "--json"]);
    let gl2: LPolynomial = serde_json::from_value(v["class"].clone()).unwrap();
    assert_eq!(gl2, "L - L^2 - L^3 + L^4".parse().unwrap());
    let v = json(&["flag", "C2", "--json"]);
    assert_eq!(v["type"], "B2");
}

#[test]
fn fibers_as_ranks_flags_or_json() {
    let a = json(&["leray-hirsch", "--fiber", "1,1,1", "--base", "1,1", "--json"]);
    let b = json(&["leray-hirsch", "--fiber", "A2/1", "--base", "A1/", "--json"]);
    let c = json(&[
        "leray-hirsch",
        "--fiber",
        r#"{"chow_ranks":[1,1,1],"fiber_dim":2}"#,
        "--base",
        r#"{"terms":[{"twist":0,"shift":0,"mult":1},{"twist":1,"shift":2,"mult":1}]}"#,
        "--json",
    ]);
    assert_eq!(a["motive"], b["motive"]);
    assert_eq!(a["motive"], c["motive"]);
    assert_eq!(a["chow_ranks"], serde_json::json!([1, 2, 2, 1]));
}

#[test]
fn tower_report_marks_the_summand() {
    let out = mf(&["tower", "1,1", "1,1", "1,1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("chow ranks: 1, 3, 3, 1"));
    assert!(out.stdout.contains("contains M(X) as a summand"));
    assert!(out.stdout.contains("positive characteristic"));
    let v = json(&["tower", "--json"]);
    let m: TateSum = serde_json::from_value(v["motive"].clone()).unwrap();
    assert_eq!(m, TateSum::unit());
}

#[test]
fn filtration_tree_verdicts() {
    let v = json(&["filtration", "B2", "--base", r#"{"coeffs":[[0,1],[1,1]]}"#, "--json"]);
    fn walk(node: &Value, count: &mut usize) {
        assert_eq!(node["verdict"], "ok");
        *count += 1;
        for c in node["children"].as_array().unwrap() {
            walk(c, count);
        }
    }
    let mut count = 0;
    walk(&v["tree"], &mut count);
    // 1 root, 2 children, each with one leaf
    assert_eq!(count, 5);
    let out = mf(&["filtration", "A1"]);
    assert!(out.stdout.contains("[G]·[C ∖ pts] + m·[G] = [G]·[C]"), "{}", out.stdout);
}

#[test]
fn config_from_file() {
    let dir = std::env::temp_dir().join(format!("mf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two_lines.json");
    // two lines in P^2 meeting in a point
    std::fs::write(
        &path,
        r#"{"components":[{"name":"l1","class":{"coeffs":[[0,1],[1,1]]}},{"name":"l2","class":{"coeffs":[[0,1],[1,1]]}}],
            "intersections":[{"subset":[1,2],"class":{"coeffs":[[0,1]]}}]}"#,
    )
    .unwrap();
    let v = json(&["config", path.to_str().unwrap(), "--json"]);
    assert_eq!(v["union_class"], serde_json::json!({"coeffs": [[0, 1], [1, 2]]}));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"components":[{"name":"a","class":{"coeffs":[]}},{"name":"b","class":{"coeffs":[]}}],"intersections":[]}"#).unwrap();
    let out = mf(&["config", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("{1,2}") || out.stderr.contains("[1, 2]"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_the_file_only() {
    let path = std::env::temp_dir().join(format!("mf-out-{}.json", std::process::id()));
    let out = mf(&["torus-filtration", "3", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total_slice_rank"], 8);
    assert_eq!(v["euler_identity"], true);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn json_keys_are_sorted_and_stable() {
    let out = mf(&["torus-filtration", "1", "--json"]);
    assert_eq!(
        out.stdout,
        "{\"base\":{\"terms\":[{\"mult\":1,\"shift\":0,\"twist\":0}]},\"euler_identity\":true,\
         \"pieces\":[{\"p\":0,\"piece\":{\"terms\":[{\"mult\":1,\"shift\":0,\"twist\":0}]},\"rank\":1},\
         {\"p\":1,\"piece\":{\"terms\":[{\"mult\":1,\"shift\":1,\"twist\":1}]},\"rank\":1}],\
         \"schema\":\"motive-forge/1\",\"torus_rank\":1,\"total_slice_rank\":2}\n"
    );
    assert_eq!(mf(&["weyl", "F4", "--json"]), mf(&["weyl", "F4", "--json"]));
}

fn binary() -> std::process::Command {
    let mut c = std::process::Command::new(env!("CARGO_BIN_EXE_motive-forge"));
    c.env_remove("MOTIVE_FORGE_CAP");
    c
}

#[test]
fn cap_from_environment_and_override() {
    let out = binary().args(["weyl", "B3"]).env("MOTIVE_FORGE_CAP", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = binary()
        .args(["weyl", "B3", "--cap", "100"])
        .env("MOTIVE_FORGE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = binary().args(["weyl", "B3"]).env("MOTIVE_FORGE_CAP", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_from_stdin() {
    use std::io::Write;
    let mut child = binary()
        .args(["config", "-", "--json"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"components":[{"name":"pt","class":{"coeffs":[[0,1]]}}],"intersections":[]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["union_class"], serde_json::json!({"coeffs": [[0, 1]]}));
}
