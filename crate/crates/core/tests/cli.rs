//! The `hetnet` binary: exit codes, file errors and reproducible output.

use std::path::Path;
use std::process::{Command, Output};

fn hetnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hetnet")).args(args).output().expect("run hetnet")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn presets_validate() {
    for p in ["kirk-silber", "house", "bowtie"] {
        let out = hetnet(&["validate", "--preset", p]);
        assert_eq!(code(&out), 0, "{p}: {}", stderr(&out));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&hetnet(&["frobnicate"])), 2);
    assert_eq!(code(&hetnet(&["validate"])), 2);
    assert_eq!(code(&hetnet(&["validate", "--preset", "triangle"])), 2);
    assert_eq!(code(&hetnet(&["simulate", "--preset", "bowtie", "--runs", "1", "--eps", "0.9"])), 2);
    assert_eq!(code(&hetnet(&["validate", "/no/such/file.toml"])), 2);
    assert_eq!(code(&hetnet(&["--help"])), 0);
}

#[test]
fn bad_rational_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.toml",
        "nodes = 3\nedges = [[1, 2], [2, 3], [3, 1]]\n\n[margins]\nexpanding = \"3/0\"\ncontracting = \"1\"\ntransverse = \"1/2\"\n",
    );
    let out = hetnet(&["validate", &f]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 5"), "{}", stderr(&out));
}

#[test]
fn two_cycle_is_not_realizable() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "two.toml", "nodes = 3\nedges = [[1, 2], [2, 1], [2, 3], [3, 1]]\n");
    let out = hetnet(&["validate", &f]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
}

#[test]
fn wrong_network_for_analysis_fails() {
    let out = hetnet(&["analyze", "bowtie", "--preset", "house"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn empty_ensemble_is_fine() {
    let out = hetnet(&["simulate", "--preset", "bowtie", "--runs", "0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn single_trajectory_from_x0() {
    let out = hetnet(&["simulate", "--preset", "bowtie", "--x0", "1,0.1,1e-5,1e-8,1e-9", "--t-max", "200"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn shadow_finds_house_switching() {
    let out = hetnet(&["shadow", "--preset", "house", "--path", "3,1,2,4", "--grid", "16"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn reports_are_reproducible() {
    let runs = [
        vec!["build", "--preset", "house"],
        vec!["analyze", "common-connection", "--preset", "kirk-silber", "--grid", "24"],
        vec!["analyze", "house", "--preset", "house"],
        vec!["analyze", "bowtie", "--preset", "bowtie"],
        vec!["simulate", "--preset", "bowtie", "--runs", "4", "--seed", "9"],
    ];
    for args in runs {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let mut outputs = Vec::new();
        for d in [&a, &b] {
            let mut full: Vec<&str> = args.clone();
            full.extend(["--out", d.path().to_str().unwrap()]);
            let out = hetnet(&full);
            assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
            outputs.push(stdout(&out));
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
        let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty(), "{args:?} wrote nothing");
        for n in names {
            let x = std::fs::read(a.path().join(&n)).unwrap();
            let y = std::fs::read(b.path().join(&n)).unwrap();
            assert_eq!(x, y, "{args:?}: {n:?} differs");
        }
    }
}

#[test]
fn config_header_reruns() {
    let out = hetnet(&["analyze", "bowtie", "--preset", "bowtie"]);
    let header: String = stdout(&out)
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| l.trim_start_matches('#').trim_start().to_string() + "\n")
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "again.toml", &header);
    let again = hetnet(&["analyze", "bowtie", &f]);
    assert_eq!(code(&again), 0, "{}", stderr(&again));
    assert_eq!(stdout(&again), stdout(&out));
}
