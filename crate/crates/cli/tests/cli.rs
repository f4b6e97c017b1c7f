use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const S: &str = "((~~p->p)->(~p|p))->(~~p|~p)";
const E: &str = "p & (p -> q1 | q2) & (q1 -> r1 | r2) & (q2 -> r1 | r2) -> r1 | r2";

fn ipl(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ipl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ipl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn scott_is_not_valid() {
    let o = ipl(&["decide", "-", "--minimal-height"], S);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("not valid\n"), "{out}");
    assert!(out.contains("countermodel with 4 worlds, height 2"), "{out}");
}

#[test]
fn e_is_valid_with_a_certificate() {
    let o = ipl(&["decide", "-"], E);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("valid\n"));
    assert!(out.contains("sequent calculus proof with"));
    assert!(out.contains("[L-imp on p -> q1 | q2]"), "{out}");
}

#[test]
fn parse_errors_exit_with_two() {
    let o = ipl(&["decide", "-"], "p -> (");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = ipl(&["decide", "/nonexistent/formula.txt"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structured_output_is_json() {
    let o = ipl(&["decide", "-", "--minimal-height", "--format", "structured"], S);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "not valid");
    assert_eq!(v["countermodel"]["worlds"].as_array().unwrap().len(), 4);
    assert_eq!(v["countermodel"]["order"].as_array().unwrap().len(), 3);

    let o = ipl(&["decide", "-", "--format", "structured"], E);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "valid");
    assert_eq!(v["derivation"]["rule"], "R-imp");
}

#[test]
fn artifacts_are_written_to_files() {
    let (cm, der, db) = (temp("model.dot"), temp("derivation.dot"), temp("db.txt"));
    let o = ipl(
        &[
            "decide",
            "-",
            "--format",
            "graph",
            "--countermodel",
            cm.to_str().unwrap(),
            "--derivation",
            der.to_str().unwrap(),
            "--db-dump",
            db.to_str().unwrap(),
        ],
        S,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("// not valid"));
    assert!(std::fs::read_to_string(&cm).unwrap().starts_with("digraph countermodel"));
    assert!(std::fs::read_to_string(&der).unwrap().starts_with("digraph derivation"));
    assert!(std::fs::read_to_string(&db).unwrap().contains("join-or"));

    let tex = temp("proof.tex");
    let o = ipl(&["decide", "-", "--format", "typeset", "--derivation", tex.to_str().unwrap()], E);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\\begin{prooftree}"));
    assert!(std::fs::read_to_string(&tex).unwrap().contains("\\BinaryInfC"));
}

#[test]
fn file_input_and_stats() {
    let path = temp("k.txt");
    std::fs::write(&path, "(~a -> b | c) -> (~a -> b) | (~a -> c)\n").unwrap();
    let o = ipl(&["decide", path.to_str().unwrap(), "--stats", "--seed", "3"], "");
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("iteration 0:") && err.contains("forward search:"), "{err}");
}

#[test]
fn generators() {
    assert_eq!(stdout(&ipl(&["gen", "nishimura", "3"], "")), "p | ~p\n");
    assert_eq!(stdout(&ipl(&["gen", "nishimura", "4"], "")), "p | ~p -> p\n");
    let args = ["gen", "random", "--vars", "3", "--size", "12", "--count", "20", "--seed", "7"];
    let a = stdout(&ipl(&args, ""));
    assert_eq!(a, stdout(&ipl(&args, "")));
    assert_eq!(a.lines().count(), 20);
}

#[test]
fn audit_passes() {
    for f in [S, "(~a -> b | c) -> (~a -> b) | (~a -> c)", "p -> p", E] {
        let o = ipl(&["audit", "-"], f);
        let out = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{out}");
        assert!(!out.contains("FAIL"));
        assert!(out.contains("PASS"));
    }
}
