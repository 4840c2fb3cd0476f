use std::path::Path;
use std::process::{Command, Output};

fn pctree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pctree")).args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn spider_round_trip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let (g, cert) = (path(dir.path(), "g.txt"), path(dir.path(), "s.cert"));
    assert!(pctree(&["gen", "random", "--n", "60", "--seed", "9", "-o", &g]).status.success());
    assert!(pctree(&["spider", &g, "--legs", "30,20,9", "-o", &cert]).status.success());
    let out = pctree(&["verify", &g, &cert]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "verdict ok\n");
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (g, cert) = (path(dir.path(), "g.txt"), path(dir.path(), "s.cert"));
    assert!(pctree(&["gen", "transitive", "--n", "50", "-o", &g]).status.success());
    assert!(pctree(&["spider", &g, "--legs", "45,2,2", "-o", &cert]).status.success());
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("legs 45 2 2", "legs 44 3 2", 1);
    assert_ne!(text, tampered);
    std::fs::write(&cert, tampered).unwrap();
    let out = pctree(&["verify", &g, &cert]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verdict rejected"));
}

#[test]
fn monochromatic_triangle_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "mono.txt");
    std::fs::write(&g, "n 4\n0 0 1\n0 2\n3\n").unwrap();
    let check = pctree(&["check", &g]);
    assert_eq!(check.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&check.stdout).contains("monochromatic triangle 0 1 2"));
    assert_eq!(pctree(&["spider", &g, "--legs", "1,1,1"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.txt");
    assert!(pctree(&["gen", "transitive", "--n", "10", "-o", &g]).status.success());
    assert_eq!(pctree(&["spider", &g, "--legs", "4,3,3"]).status.code(), Some(2));
    assert_eq!(pctree(&["spider", &g, "--legs", "a,b"]).status.code(), Some(2));
    assert_eq!(pctree(&["check", &path(dir.path(), "missing.txt")]).status.code(), Some(2));
    assert_eq!(pctree(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn threads_flag_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.txt");
    assert!(pctree(&["gen", "random", "--n", "120", "--seed", "1", "-o", &g]).status.success());
    let a = pctree(&["spider", &g, "--legs", "80,30,9"]);
    let b = pctree(&["--threads", "1", "spider", &g, "--legs", "80,30,9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
