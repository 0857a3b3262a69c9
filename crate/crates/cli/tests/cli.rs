mod common;

use std::fs;
use std::io::Cursor;
use std::process::Command;

use common::golden_dir;
use superclause::Formula;
use superclause_cli::{meta_path, run, InstanceMeta, Outcome};

fn cli(args: &[&str]) -> Outcome {
    cli_stdin(args, "")
}

fn cli_stdin(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("superclause").chain(args.iter().copied());
    run(argv, &mut Cursor::new(input.as_bytes().to_vec()))
}

fn golden(name: &str) -> String {
    golden_dir().join(name).to_str().unwrap().to_string()
}

fn formula(text: &str) -> Formula {
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    body.join(";").parse().unwrap()
}

#[test]
fn stdin_matches_file_input() {
    let from_file = cli(&["closure", &golden("ex1.cnf"), "--json"]);
    let text = fs::read_to_string(golden("ex1.cnf")).unwrap();
    let from_stdin = cli_stdin(&["closure", "-", "--json"], &text);
    assert_eq!(from_file, from_stdin);
}

#[test]
fn output_format_follows_input_unless_overridden() {
    let out = cli_stdin(&["closure", "-"], "p cnf 2 2\n1 0\n-1 2 0\n");
    assert!(out.stdout.starts_with("p cnf 2 3\n"), "{}", out.stdout);
    let out = cli_stdin(
        &["closure", "-", "--format", "named"],
        "p cnf 2 2\n1 0\n-1 2 0\n",
    );
    assert_eq!(formula(&out.stdout), "x1; -x1 x2; x2".parse().unwrap());
    let out = cli_stdin(&["closure", "-", "--format", "dimacs"], "a\n-a b\n");
    assert!(out.stdout.contains("c map 1 a"), "{}", out.stdout);
    let out = cli_stdin(&["closure", "-", "--input-format", "named"], "p\n");
    assert_eq!(out.code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["closure", "/nonexistent/file.cnf"]).code, 2);
    assert_eq!(cli(&["check", &golden("ex1.cnf")]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
    assert_eq!(cli_stdin(&["closure", "-"], "a -a\n").code, 2);
    assert_eq!(
        cli(&["closure", &golden("big.cnf"), "--budget", "10"]).code,
        3
    );
    assert_eq!(
        cli(&[
            "check",
            &golden("split1.cnf"),
            "--all",
            "--max-vars",
            "1",
            "--method",
            "definition"
        ])
        .code,
        3
    );
    assert_eq!(
        cli(&["fix", &golden("blocked.cnf"), "--targets", "0"]).code,
        5
    );
    assert_eq!(
        cli(&["check", &golden("ex1.cnf"), "--all", "--method", "cross"]).code,
        0
    );
}

#[test]
fn env_var_sets_the_variable_cap() {
    let bin = env!("CARGO_BIN_EXE_superclause");
    let input = golden("split1.cnf");
    let args = ["check", input.as_str(), "--all", "--method", "definition"];
    let capped = Command::new(bin)
        .args(args)
        .env("SUPERCLAUSE_MAX_VARS", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let flag_wins = Command::new(bin)
        .args(args)
        .arg("--max-vars")
        .arg("8")
        .env("SUPERCLAUSE_MAX_VARS", "1")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
    let junk = Command::new(bin)
        .args(args)
        .env("SUPERCLAUSE_MAX_VARS", "lots")
        .output()
        .unwrap();
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn fix_then_forget_restores_the_input() {
    let tmp = tempfile::tempdir().unwrap();
    let split = tmp.path().join("split.cnf");
    let out = cli(&[
        "fix",
        &golden("split1.cnf"),
        "--targets",
        "0",
        "--out",
        split.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let check = cli(&[
        "check",
        split.to_str().unwrap(),
        "--all",
        "--method",
        "definition",
    ]);
    assert!(
        !check.stdout.contains(" superredundant"),
        "{}",
        check.stdout
    );
    let restored = cli(&["forget", split.to_str().unwrap(), "--var", "_s0"]);
    let original = fs::read_to_string(golden("split1.cnf")).unwrap();
    assert_eq!(formula(&restored.stdout), formula(&original));
}

#[test]
fn reduce_writes_instance_and_metadata() {
    let tmp = tempfile::tempdir().unwrap();
    let inst = tmp.path().join("out.inst");
    let out = cli_stdin(
        &["reduce", "-", "--out", inst.to_str().unwrap()],
        "p q\n-q\n",
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    let meta: InstanceMeta =
        serde_json::from_str(&fs::read_to_string(meta_path(&inst)).unwrap()).unwrap();
    assert_eq!((meta.n, meta.m), (2, 2));
    assert_eq!(meta.input, vec!["x1 x2", "-x2"]);
    assert_eq!(
        meta.var_map,
        vec![("p".into(), "x1".into()), ("q".into(), "x2".into())]
    );
    assert_eq!(out.stdout, format!("n 2 m 2 k {}\n", meta.k));
    let verified = cli(&["verify-reduction", inst.to_str().unwrap()]);
    assert_eq!(verified.code, 0, "{}{}", verified.stdout, verified.stderr);
    assert!(verified.stdout.starts_with("consistent"));
}

#[test]
fn tampered_instance_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let inst = tmp.path().join("t.inst");
    assert_eq!(
        cli(&[
            "reduce",
            &golden("sat.cnf"),
            "--out",
            inst.to_str().unwrap()
        ])
        .code,
        0
    );
    let text = fs::read_to_string(&inst).unwrap();
    let dropped: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    fs::write(&inst, dropped).unwrap();
    let out = cli(&["verify-reduction", inst.to_str().unwrap(), "--json"]);
    assert_eq!(out.code, 4);
    assert!(out.stdout.contains("\"matches_construction\": false"));

    fs::write(meta_path(&inst), "{}").unwrap();
    assert_eq!(cli(&["verify-reduction", inst.to_str().unwrap()]).code, 2);
    assert_eq!(cli(&["verify-reduction", "-"]).code, 2);
}

#[test]
fn degenerate_input_is_flagged() {
    let out = cli_stdin(&["minimize", "-", "--json"], "a\n-a\n");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("degenerate input"), "{}", out.stdout);
    let out = cli_stdin(&["closure", "-"], "[]\na\n");
    assert!(out.stderr.contains("empty clause"), "{}", out.stderr);
}
