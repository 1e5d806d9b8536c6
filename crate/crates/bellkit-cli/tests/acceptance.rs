//! Acceptance criterion for the command-line interface: byte-identical
//! demo output and the 0/1/2 exit-code contract on canned inputs.

use std::path::{Path, PathBuf};
use std::process::Command;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_bellkit"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), out.stdout, out.stderr)
}

#[test]
fn criterion_11_cli_golden_files() {
    let (code, stdout, _) = run(&["demo"]);
    let golden = std::fs::read(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/demo.txt"),
    )
    .unwrap();
    assert_eq!(stdout, golden, "demo output drifted from the golden file");
    assert_eq!(code, 0);

    let rho = data("rho0.json");
    let rep = data("rep_sym.json");
    let bad = data("bad_state.json");
    let povms = [data("spin_a.json"), data("spin_b.json"), data("spin_c.json")];
    let povm_args: Vec<&str> = povms.iter().map(|p| p.to_str().unwrap()).collect();

    let mut violated =
        vec!["check", "--ineq", "bell-original", "--state", rho.to_str().unwrap(), "--povm"];
    violated.extend(&povm_args);
    assert_eq!(run(&violated).0, 2, "violated inequality must exit 2");

    let mut holds =
        vec!["check", "--ineq", "quantum-analogue", "--rep", rep.to_str().unwrap(), "--povm"];
    holds.extend(&povm_args);
    assert_eq!(run(&holds).0, 0, "holding inequality must exit 0");

    let mut invalid =
        vec!["check", "--ineq", "bell-original", "--state", bad.to_str().unwrap(), "--povm"];
    invalid.extend(&povm_args);
    let (code, _, stderr) = run(&invalid);
    assert_eq!(code, 1, "invalid input must exit 1");
    assert!(String::from_utf8(stderr).unwrap().contains("TraceNotOne"));

    println!("acceptance 11 (CLI golden files and exit codes): PASS");
}
