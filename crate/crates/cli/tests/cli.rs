use std::path::Path;
use std::process::{Command, Output};

fn liechief(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liechief"))
        .args(args)
        .env_remove("LIECHIEF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_list_and_dump() {
    let o = liechief(&["catalog", "list"]);
    assert!(o.status.success());
    let names: Vec<_> = stdout(&o).lines().map(String::from).collect();
    assert!(names.contains(&"der_psl3_gf3".to_string()));
    assert_eq!(names.len(), 12);

    let o = liechief(&["catalog", "dump", "sl2_q"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["characteristic"], 0);
    assert_eq!(v["modules"].as_array().unwrap().len(), 3);

    assert_eq!(liechief(&["catalog", "dump", "nope"]).status.code(), Some(2));
}

#[test]
fn dumped_file_checks_like_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let dump = stdout(&liechief(&["catalog", "dump", "heisenberg_gf3"]));
    let path = write(dir.path(), "h.json", &dump);
    let a = liechief(&["check", &path, "--suite", "eq1", "--format", "json"]);
    let b = liechief(&["check", "heisenberg_gf3", "--suite", "eq1", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_report_is_stable() {
    let args = ["check", "l2_gf5", "--suite", "all", "--format", "json", "--seed", "11"];
    let a = liechief(&args);
    let b = liechief(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["suite"], "all");
    for r in v["records"].as_array().unwrap() {
        assert!(!r["anchor"].as_str().unwrap().is_empty());
        assert_ne!(r["verdict"], "fail");
    }
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_liechief"))
        .args(["check", "abelian_1_gf3", "--suite", "structure"])
        .env("LIECHIEF_SEED", "42")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("liechief "));
    assert!(stdout(&o).lines().next().unwrap().ends_with("seed 42"));
    let o = liechief(&["check", "abelian_1_gf3", "--suite", "structure"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with("seed 7"));
}

#[test]
fn loewy_text_line() {
    let o = liechief(&["check", "sl2_gf5", "--suite", "loewy"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.trim() == "L(3): second-layer 2 ≥ split 0 (strict)"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(liechief(&["check", "nope"]).status.code(), Some(2));
    assert_eq!(liechief(&["check", "l2_gf3", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(liechief(&["check", "l2_gf3", "--format", "xml"]).status.code(), Some(2));

    let bad = write(dir.path(), "bad.json", "{\n  \"characteristic\": 3,\n  \"dim\": oops\n}");
    let o = liechief(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    // [x,y] = x, [y,z] = y over GF(5): the Jacobiator of (x,y,z) is x.
    let jacobi = write(
        dir.path(),
        "jacobi.json",
        r#"{"characteristic": 5, "dim": 3, "labels": ["x","y","z"],
            "brackets": {"0,1": [1,0,0], "1,2": [0,1,0]}}"#,
    );
    let o = liechief(&["check", &jacobi]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(0,1,2)"), "{}", stderr(&o));
}

#[test]
fn non_restricted_module_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    // x acts by 1 but x^[p] = 0.
    let path = write(
        dir.path(),
        "h.json",
        r#"{"characteristic": 3, "dim": 3, "labels": ["x","y","z"],
            "brackets": {"0,1": [0,0,1]},
            "pmap": [[0,0,0],[0,0,0],[0,0,0]],
            "modules": [{"name": "X", "dim": 1, "action": [[[1]],[[0]],[[0]]]}]}"#,
    );
    let o = liechief(&["check", &path, "--suite", "structure"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn failing_check_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    // The abelian plane over Q is not a chief factor of itself.
    let path = write(
        dir.path(),
        "q.json",
        r#"{"characteristic": 0, "dim": 2, "labels": ["a","b"], "chain": []}"#,
    );
    let o = liechief(&["check", &path, "--suite", "eq1"]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("FAIL eq1.formula"));
    assert!(stdout(&o).contains("proper submodule"));
}

#[test]
fn max_dim_turns_scale_into_skips() {
    let o = liechief(&["check", "sl2_gf5", "--suite", "blocks", "--max-dim", "16"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("reason: scale guard"));
}
