use std::path::PathBuf;
use std::process::Command;

use genus2_cli::{EXIT_DIFF, EXIT_OK, EXIT_USAGE};

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genus2"));
    cmd.args(args).current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../.."));
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

#[test]
fn malformed_golden_goes_to_stderr() {
    let dir = std::env::temp_dir().join(format!("genus2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"rows\": [{\"K_label\": 3}]}").unwrap();
    let (code, out, err) = run(&["classify", "--golden", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.starts_with("error: ") && err.contains("malformed"));
}

#[test]
fn unknown_group_lists_supported() {
    let (code, _, err) = run(&["covers", "--group", "A7"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Z2xZ4") && err.contains("Q8"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["surfaces", "nodal-genus", "3", "3", "4"]).0, EXIT_OK);
    assert_eq!(run(&["classify", "--golden", "tables/table3.json", "--extendable-only"]).0, EXIT_DIFF);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run_env(&["classify"], &[("GENUS2_THREADS", "zero")]).0, EXIT_USAGE);
}

#[test]
fn thread_cap_does_not_change_output() {
    for args in [&["classify"][..], &["surfaces", "search"][..], &["covers"][..]] {
        let one = run_env(args, &[("GENUS2_THREADS", "1")]);
        let many = run_env(args, &[("GENUS2_THREADS", "4")]);
        assert_eq!(one, many, "{args:?}");
        assert_eq!(run(args), run(args), "{args:?}");
    }
}
