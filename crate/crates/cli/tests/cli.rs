use std::path::PathBuf;
use std::process::{Command, Output};

fn nodal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nodal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("nodal-cli-{}-{name}", std::process::id()))
}

#[test]
fn cohomology_of_the_exceptional_divisor() {
    let o = nodal(&["cohomology", "H-h-k"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "{0: 1}");
    let o = nodal(&["cohomology", "--surface", "(-2,0)"]);
    assert_eq!(stdout(&o).trim(), "{1: 1}");
}

#[test]
fn rhom_and_mutations() {
    assert_eq!(stdout(&nodal(&["rhom", "O(-h)", "G"])).trim(), "{1: 1}");
    assert_eq!(stdout(&nodal(&["rhom", "G", "F"])).trim(), "{0: 1}");
    assert_eq!(stdout(&nodal(&["mutate", "L", "O()", "O(h)"])).trim(), "shift(O(-h), 1)");
    assert_eq!(stdout(&nodal(&["mutate", "l", "O(H+h+k)", "O(2H)"])).trim(), "OE(0,0)");
}

#[test]
fn class_gram_and_kernel() {
    let o = stdout(&nodal(&["class", "Ecal"]));
    assert!(o.starts_with("coords: [0, -1, 1, 0, 0, 1, -1, 0]"), "{o}");
    let gram = stdout(&nodal(&["gram", "triple"]));
    assert_eq!(gram.lines().count(), 3);
    assert_eq!(stdout(&nodal(&["gram", "O()", "O(h)"])), "[1 2]\n[0 1]\n");
    let k = stdout(&nodal(&["kernel"]));
    assert!(k.contains("kernel rank: 2"), "{k}");
    assert!(k.contains("quotient: rank 1, torsion []"), "{k}");
}

#[test]
fn check_exit_codes_and_json() {
    let o = nodal(&["check", "--only", "kernel.rank"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));

    let path = scratch("report.json");
    let o = nodal(&["check", "--only", "serre.canonical,tilt.simples", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(json.contains("\"version\": \"1.0\""));
    assert!(json.contains("\"name\": \"serre.canonical\""));
    assert!(json.contains("\"name\": \"tilt.simples\""));

    assert_eq!(nodal(&["check", "--only", "no.such.check"]).status.code(), Some(2));
    assert_eq!(nodal(&["rhom", "O(", "G"]).status.code(), Some(2));
    assert_eq!(nodal(&["--config", "/nonexistent/config.toml", "kernel"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let base = include_str!("../../core/config/default.toml");
    let broken = base.replace(r#"["1", "1/100"]"#, r#"["-1", "0"]"#);
    assert_ne!(base, broken, "charge Z_B not found in the bundled config");
    let path = scratch("broken.toml");
    std::fs::write(&path, broken).unwrap();
    let o = nodal(&["--config", path.to_str().unwrap(), "check", "--only", "stability.torsion-pair-slope"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn full_report_passes_and_other_twists_skip() {
    let o = nodal(&["report"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("36 checks: 36 pass, 0 fail, 0 ambiguous, 0 skipped"));

    let o = nodal(&["--twist=0,0", "report", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"nodalQuadric\": false"));
    assert!(text.contains("\"status\": \"skipped\""));
    assert_eq!(nodal(&["--twist=1", "report"]).status.code(), Some(2));
}

#[test]
fn registry_listing() {
    let o = stdout(&nodal(&["check", "--list"]));
    assert_eq!(o.lines().count(), 36);
    assert!(o.lines().any(|l| l.starts_with("props.parser-roundtrip")));
}
