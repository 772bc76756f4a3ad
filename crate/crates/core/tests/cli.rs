use std::path::{Path, PathBuf};
use std::process::Command;

use plectic_core::cli::{parse, run};

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut out: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "plc"))
        .collect();
    out.sort();
    assert!(out.len() >= 5, "fixtures missing in {}", dir.display());
    out
}

fn plectic(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_plectic")).args(args).output().unwrap()
}

#[test]
fn machine_reports_match_goldens() {
    for f in fixtures() {
        let doc = parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let golden = std::fs::read_to_string(f.with_extension("golden")).unwrap();
        for jobs in [1, 4] {
            assert_eq!(
                run(&doc, jobs).machine_text(),
                golden,
                "{} with {jobs} jobs",
                f.display()
            );
        }
    }
}

#[test]
fn exit_code_is_zero_iff_no_fail() {
    for f in fixtures() {
        let out = plectic(&["--machine", "run", f.to_str().unwrap()]);
        let text = String::from_utf8(out.stdout).unwrap();
        let any_fail = text.lines().any(|l| l.starts_with("FAIL\t"));
        assert_eq!(out.status.code(), Some(i32::from(any_fail)), "{}", f.display());
        assert_eq!(text, std::fs::read_to_string(f.with_extension("golden")).unwrap());
    }
}

#[test]
fn fail_entries_carry_nonzero_residuals() {
    for f in fixtures() {
        let golden = std::fs::read_to_string(f.with_extension("golden")).unwrap();
        for line in golden.lines() {
            let cols: Vec<&str> = line.split('\t').collect();
            assert_eq!(cols.len(), 4, "{line}");
            if cols[0] == "FAIL" {
                assert_ne!(cols[3], "0", "{line}");
            }
        }
    }
}

#[test]
fn expected_failures() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let r5 = std::fs::read_to_string(dir.join("non_hamiltonian_r5.golden")).unwrap();
    assert!(r5.contains("FAIL\thamiltonian(a).vector-field\tda = -i_v w\t-dx4^dx5\n"));
    let pert = std::fs::read_to_string(dir.join("cocycle_perturbed.golden")).unwrap();
    let fails: Vec<&str> = pert.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails, ["FAIL\tcocycle3(U).connection[1,2]\tB_j - B_i = dA_ij\tdy^dz"]);
}

#[test]
fn parse_print_round_trip() {
    for f in fixtures() {
        let doc = parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
        let printed = doc.to_source();
        let again = parse(&printed).unwrap_or_else(|e| panic!("{}: {e}\n{printed}", f.display()));
        assert_eq!(again, doc, "{}", f.display());
        assert_eq!(again.to_source(), printed);
    }
}

#[test]
fn fmt_subcommand_prints_canonical_source() {
    let f = &fixtures()[0];
    let out = plectic(&["fmt", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&std::fs::read_to_string(f).unwrap()).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), doc.to_source());
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = std::env::temp_dir().join(format!("plectic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.plc");
    std::fs::write(&bad, "chart R3 (x, y, z)\nform a = 2x\n").unwrap();
    let out = plectic(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2, column 11"));
    let missing = plectic(&["run", dir.join("absent.plc").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn suites_report_seed_and_pass() {
    let out = plectic(&["--seed", "11", "suite", "cocycle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("suite cocycle, seed 11"));
    let list = plectic(&["suite", "list"]);
    assert_eq!(
        String::from_utf8(list.stdout).unwrap().lines().count(),
        plectic_core::suites::NAMES.len()
    );
    assert_eq!(plectic(&["suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn suites_are_deterministic_per_seed() {
    let a = plectic(&[
        "--machine",
        "--seed",
        "5",
        "--max-degree",
        "2",
        "suite",
        "prop35",
        "--count",
        "20",
    ]);
    let b = plectic(&[
        "--machine",
        "--seed",
        "5",
        "--max-degree",
        "2",
        "suite",
        "prop35",
        "--count",
        "20",
        "--jobs",
        "1",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
