use std::path::Path;
use std::process::{Command, Output};

use prymlab::hurwitz::sample_tuple;
use prymlab::{HurwitzTuple, Permutation};

fn prymlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prymlab"))
        .args(args)
        .env_remove("PRYMLAB_GUARD")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_tuple(dir: &Path, name: &str, t: &HurwitzTuple) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(t).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn prym_reports() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_tuple(dir.path(), "t36.json", &sample_tuple(3, 6).unwrap());
    let o = prymlab(&["prym", &f]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("g=4 coker=1 m=1 type=(1,1,3)"), "{s}");
    assert!(s.trim_end().ends_with("type_check=PASS"), "{s}");

    let f = write_tuple(dir.path(), "t24.json", &sample_tuple(2, 4).unwrap());
    let s = stdout(&prymlab(&["prym", &f]));
    assert!(s.starts_with("g=3 coker=1 m=1 type=(1,2)") && s.contains("type_check=PASS"), "{s}");
}

#[test]
fn invalid_tuples_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let id = Permutation::identity(3);
    let swap = Permutation::transposition(3, 1, 2);
    let t = HurwitzTuple::new(vec![swap.clone(), swap], id.clone(), id).unwrap();
    let f = write_tuple(dir.path(), "split.json", &t);
    let o = prymlab(&["prym", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("transitive=false"));

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"degree\": 2}").unwrap();
    assert_eq!(prymlab(&["prym", junk.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(prymlab(&["prym", "/nonexistent/t.json"]).status.code(), Some(4));
    assert_eq!(prymlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn enumerate_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.jsonl");
    let o = prymlab(&["enumerate", "--d", "2", "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("entries=4 orbits=1"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.ends_with('\n'));
    let first = text.clone();
    prymlab(&["enumerate", "--d", "2", "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
    let o = prymlab(&["verify", out.to_str().unwrap()]);
    assert_eq!(stdout(&o), "entries=4 verify=PASS\n");

    let tampered = first.replacen("\"genus\":2", "\"genus\":5", 1);
    std::fs::write(&out, tampered).unwrap();
    assert_eq!(prymlab(&["verify", out.to_str().unwrap()]).status.code(), Some(2));

    let o = prymlab(&["enumerate", "--d", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn enumerate_counts_degree_three() {
    let o = prymlab(&["enumerate", "--d", "3", "--n", "2"]);
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let expected = prymlab::hurwitz::enumerate_simple_classes(3, 2, prymlab::hurwitz::DEFAULT_GUARD)
        .unwrap()
        .len();
    assert_eq!(lines.len(), expected);
    assert!(lines.iter().all(|v| v["prym_type"] == serde_json::json!([3])));
}

#[test]
fn guard_exit_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_prymlab"))
        .args(["enumerate", "--d", "3", "--n", "4"])
        .env("PRYMLAB_GUARD", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(prymlab(&["orbits", "--d", "9", "--n", "2"]).status.code(), Some(3));
}

#[test]
fn dualize_commands() {
    assert_eq!(stdout(&prymlab(&["dualize", "--type", "1,1,2"])), "1,2,2\n");
    assert_eq!(stdout(&prymlab(&["dualize", "--type", "1,1,1"])), "1,1,1\n");
    assert_eq!(prymlab(&["dualize", "--type", "1,2,3"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.json");
    std::fs::write(&z, r#"{"z": [[[0,1],[0,0],[0,0]],[[0,0],[0,1],[0,0]],[[0,0],[0,0],[0,1]]], "d": [1,1,2]}"#)
        .unwrap();
    let o = prymlab(&["dualize", "--period", z.to_str().unwrap(), "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    let dual: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(dual["d"], serde_json::json!([1, 2, 2]));
    assert_eq!(dual["z"][0][0], serde_json::json!([0.0, 0.5]));
    let check = lines.next().unwrap();
    assert!(check.ends_with("check=PASS"), "{check}");
    let residual: f64 = check.split(' ').next().unwrap().trim_start_matches("double_dual_residual=").parse().unwrap();
    assert!(residual < 1e-9);
}

#[test]
fn moduli_commands() {
    let s = stdout(&prymlab(&["moduli", "--case", "5", "--e", "4"]));
    assert!(s.contains("bound=7 closed=n-1") && s.trim_end().ends_with("PASS"), "{s}");
    let s = stdout(&prymlab(&["moduli", "--case", "3", "--e", "4"]));
    assert!(s.contains("bound=5 closed=n-3") && s.trim_end().ends_with("PASS"), "{s}");
    let o = prymlab(&["moduli", "--case", "3", "--e", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = prymlab(&["moduli", "--case", "1", "--a", "1", "--b", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("b < 2a"));
    let s = stdout(&prymlab(&["moduli", "--expr", "F(2,3)"]));
    assert!(s.contains("stable=true"), "{s}");
}

#[test]
fn orbit_commands() {
    let s = stdout(&prymlab(&["orbits", "--d", "3", "--n", "4"]));
    assert!(s.contains("orbits=1") && s.contains("expected_one=PASS"), "{s}");
    let s = stdout(&prymlab(&["orbits", "--d", "2", "--n", "0"]));
    assert!(!s.contains("expected_one"), "{s}");
}

#[test]
fn tschirnhausen_command() {
    assert_eq!(stdout(&prymlab(&["tschirnhausen", "--d", "3", "--gx", "4", "--gy", "1"])), "deg_E=3 deg_R=6\n");
    assert_eq!(prymlab(&["tschirnhausen", "--d", "3", "--gx", "2", "--gy", "2"]).status.code(), Some(2));
}
