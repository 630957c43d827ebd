use std::process::{Command, Output};

fn grkappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grkappa"))
        .args(args)
        .env_remove("GRKAPPA_CACHE")
        .output()
        .expect("run grkappa")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decomp_method_all_small_block() {
    let o = grkappa(&["decomp", "--e", "2", "--kappa", "0", "--d", "2", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("methods agree: yes"));
    let table: Vec<&str> = out.lines().skip(2).take(2).collect();
    assert_eq!(table, ["2    q^1", "1,1  1"]);
}

#[test]
fn blocks_json_matches_enumeration() {
    let o = grkappa(&["blocks", "--e", "2", "--kappa", "0", "--d", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let blocks = v.as_array().unwrap();
    let rows: usize = blocks.iter().map(|b| b["multipartitions"].as_array().unwrap().len()).sum();
    assert_eq!(rows, 3);
    let restricted: usize = blocks.iter().map(|b| b["restricted"].as_array().unwrap().len()).sum();
    assert_eq!(restricted, 2);
}

#[test]
fn fock_verify_exit_zero() {
    let o = grkappa(&["fock-verify", "--e", "2", "--kappa", "0", "--dmax", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn crystal_dot_export() {
    let o = grkappa(&["crystal", "--e", "3", "--d", "2", "--format", "dot"]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("\"0\" -> \"1\" [label=\"i=0\"]"));
    assert!(out.contains("\"1\" -> \"2\" [label=\"i=1\"]"));
    assert!(out.contains("\"1\" -> \"1,1\" [label=\"i=2\"]"));
}

#[test]
fn mullineux_and_characters() {
    let o = grkappa(&["mullineux", "--e", "3", "--mu", "2,1"]);
    assert_eq!(stdout(&o).trim(), "1,1,1");
    let o = grkappa(&["specht-char", "--e", "2", "--mu", "1,1"]);
    assert_eq!(stdout(&o).trim(), "(0,1)  1");
    let o = grkappa(&["irr-char", "--e", "2", "--mu", "1,1", "--method", "llt"]);
    assert_eq!(stdout(&o).trim(), "(0,1)  1");
}

#[test]
fn seminormal_and_graded_dim() {
    let o = grkappa(&["seminormal-check", "--d", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = grkappa(&["graded-dim", "--e", "2", "--kappa", "0,1", "--d", "3"]);
    assert!(stdout(&o).ends_with("total at q=1: 48\n"));
}

#[test]
fn errors_exit_one() {
    for args in [
        &["frobnicate"][..],
        &["specht-char", "--mu", "3,4"],
        &["blocks", "--e", "1", "--d", "2"],
        &["mullineux", "--e", "2", "--kappa", "0,1", "--mu", "1|0"],
        &["decomp", "--e", "2", "--d", "2", "--format", "dot"],
    ] {
        let o = grkappa(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["decomp", "--e", "3", "--d", "6", "--format", "json", "--method", "extremal"];
    let cold = Command::new(env!("CARGO_BIN_EXE_grkappa")).args(args).env("GRKAPPA_CACHE", dir.path()).output().unwrap();
    let warm = Command::new(env!("CARGO_BIN_EXE_grkappa")).args(args).env("GRKAPPA_CACHE", dir.path()).output().unwrap();
    let plain = grkappa(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, plain.stdout);
    assert!(dir.path().join("3").join("0").is_dir());
}

#[test]
fn env_overrides_cache_dir_flag() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_grkappa"))
        .args(["decomp", "--e", "2", "--d", "3", "--cache-dir"])
        .arg(flag_dir.path())
        .env("GRKAPPA_CACHE", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(env_dir.path().join("2").is_dir());
    assert!(!flag_dir.path().join("2").exists());
}
