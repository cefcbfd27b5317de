use std::fs;
use std::process::Command;

fn nhsym(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_nhsym")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn check_passing_operator() {
    let (code, out, _) = nhsym(&["check", "--preset", "dirac4a", "--g1", "1", "--g2", "0.5", "--op", "g0"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"));
}

#[test]
fn check_failing_operator() {
    let (code, out, _) = nhsym(&["check", "--preset", "dirac4b", "--op", "g2"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn discovery_without_solutions_is_negative() {
    let (code, out, _) = nhsym(&["check", "--preset", "pyramid-nochiral", "--discover", "chiral"]);
    assert_eq!(code, 1);
    assert!(out.contains("dimension 0"));
}

#[test]
fn builtin_operators_pass() {
    for preset in ["honeycomb", "fig5", "rt_wheel", "dirac4a", "dirac4b"] {
        let (code, out, _) = nhsym(&["check", "--preset", preset]);
        assert_eq!(code, 0, "{preset}: {out}");
    }
    let (code, _, _) = nhsym(&["check", "--preset", "pyramid-chiral", "--detune", "0.3*g1*g2 + (0.2-0.1i)*g3*g5"]);
    assert_eq!(code, 0);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.model");
    fs::write(&bad, "name x\nn_sites 2\nsite 0 a 0\n").unwrap();
    let (code, _, err) = nhsym(&["check", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(nhsym(&["check", "--preset", "nope"]).0, 2);
    assert_eq!(nhsym(&["check", "--preset", "fig5", "--op", "g0"]).0, 2);
    assert_eq!(nhsym(&["sweep"]).0, 2);
    assert_eq!(nhsym(&["ep", "--fig", "zz"]).0, 2);
}

#[test]
fn build_then_check_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.model");
    let p = path.to_str().unwrap();
    assert_eq!(nhsym(&["build", "--preset", "rt_wheel", "--beta", "0.75-0.1i", "--out", p]).0, 0);
    let (code, out, _) = nhsym(&["check", "--file", p, "--op", "1.5*g1 + (0.3i)*g3", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    let (code, _, _) = nhsym(&["check", "--file", p, "--discover", "chiral"]);
    assert_eq!(code, 0);
    assert!(dir.path().join("check.json").is_file());
}

#[test]
fn operator_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.op");
    fs::write(&path, "kind dagger_minus\nlabel C\nn 2\nentry 0 0 1 0\nentry 1 1 -1 0\n").unwrap();
    let model = dir.path().join("dimer.model");
    fs::write(&model, "name dimer\nn_sites 2\nsite 0 0 0.5 A\nsite 1 0 -0.5 B\nhop 0 1 1 0\nhop 1 0 1 0\n").unwrap();
    let (code, out, err) = nhsym(&["check", "--file", model.to_str().unwrap(), "--op", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
}

#[test]
fn ep_exit_codes() {
    let (code, out, _) = nhsym(&["ep", "--fig", "1b", "--bracket", "1.2", "1.6"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"order\": 3"));
    let (code, out, _) = nhsym(&["ep", "--family", "jordan2", "--bracket", "-0.1", "0.1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"order\": 2"));
    let (code, out, _) = nhsym(&["ep", "--fig", "5b", "--bracket", "0", "1.00499"]);
    assert_eq!(code, 1);
    assert!(out.contains("not_found"));
}

#[test]
fn sweep_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, _) = nhsym(&["sweep", "--fig", "4d", "--steps", "50", "--out", d]);
    assert_eq!(code, 0);
    let csv = fs::read_to_string(dir.path().join("sweep_4d.csv")).unwrap();
    assert!(csv.starts_with("param,mode_id,re,im,flags\n"));
    assert!(csv.lines().skip(1).all(|l| l.contains("origin")));
    let json = fs::read_to_string(dir.path().join("events_4d.json")).unwrap();
    assert!(json.contains("\"origin\": true"));
}
