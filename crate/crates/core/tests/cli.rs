//! The `mofs` binary end to end.

use std::path::PathBuf;
use std::process::{Command, Output};

use mofs::format::{parse_mofs, parse_one};
use mofs::orthogonality::{verify_mofs, VerifyMode};

fn mofs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mofs"))
        .args(args)
        .env_remove("MOFS_WORKERS")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.mofs"))
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_accepts_bundled_sets() {
    let o = mofs(&["verify", &data("oddmax2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("orthogonal=true bound=9/25"));
}

#[test]
fn verify_rejects_repeated_square() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("twice.mofs");
    std::fs::write(&path, "MOFS n=3 k=2 types=1,1 format=bin\n1 0 0\n0 1 0\n0 0 1\n\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let o = mofs(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL squares=(1,2)"));
}

#[test]
fn fvalue_line_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.mofs");
    let o = mofs(&["fvalue", "--n", "4", "--types", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("FVALUE n=4 lambda={2} value=9 exact=true"));
    let witness = parse_one(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(witness.len(), 9);
    assert_eq!(mofs(&["verify", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn table1_case_one() {
    let o = mofs(&["table1", "--case", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("TABLE1 case=1 seeds=2 mates=(93,96) max=10 exact=true"));
}

#[test]
fn enumerate_output_parses_back() {
    let o = mofs(&["enumerate", "--n", "4", "--lambda1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_mofs(&stdout(&o)).unwrap().len(), 90);
    let o = mofs(&["enumerate", "--n", "4", "--lambda1", "2", "--dedup", "--count-only"]);
    assert_eq!(stdout(&o).trim(), "COUNT n=4 lambda1=2 count=45");
    let o = mofs(&["enumerate", "--n", "6", "--lambda1", "1", "--count-only", "--mate-of", &data("notmax")]);
    assert_eq!(stdout(&o).trim(), "COUNT n=6 lambda1=1 count=2");
}

#[test]
fn extend_witness_verifies() {
    let o = mofs(&["extend", &data("notmax"), "--types", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let set = parse_one(text.split_once('\n').unwrap().1).unwrap();
    assert!(verify_mofs(&set, VerifyMode::Exhaustive).is_ok());
    assert!(set.len() > 5);
}

#[test]
fn budget_exhaustion_exits_three() {
    let o = mofs(&["extend", &data("ex1"), "--types", "2,3", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("exact=false"));
}

#[test]
fn relations_and_obstructions() {
    let o = mofs(&["relations", &data("ex1")]);
    assert!(stdout(&o).contains("FULL-RELATION non-constant RELATION a=4 b=4"));
    let o = mofs(&["relations", &data("ejc_goof"), "--subsets"]);
    assert!(stdout(&o).contains("RELATION subset={1,2,3,4}"));
    let o = mofs(&["obstruct", &data("ex_p_rel"), "--w", "3"]);
    assert!(stdout(&o).contains("EXCLUDED types={1}"));
    let o = mofs(&["obstruct", &data("pseudo_rel_a"), "--w", "3", "--mu", "3"]);
    assert!(stdout(&o).contains("type_excluded=false"));
}

#[test]
fn canon_and_dedupe() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["pseudo_rel_a", "pseudo_rel_b", "ex1"] {
        std::fs::copy(data(name), dir.path().join(format!("{name}.mofs"))).unwrap();
    }
    let o = mofs(&["dedupe", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# classes="));
    let first = mofs(&["canon", &data("pseudo_rel_a")]);
    let again = {
        let path = dir.path().join("canon.mofs");
        std::fs::write(&path, stdout(&first)).unwrap();
        mofs(&["canon", path.to_str().unwrap()])
    };
    assert_eq!(stdout(&first), stdout(&again));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mofs(&["bogus"]).status.code(), Some(2));
    assert_eq!(mofs(&["fvalue", "--n", "4"]).status.code(), Some(2));
    assert_eq!(mofs(&["fvalue", "--n", "4", "--types", "7"]).status.code(), Some(2));
    assert_eq!(mofs(&["table1", "--case", "12"]).status.code(), Some(2));
    assert_eq!(mofs(&["--workers", "0", "table1", "--case", "1"]).status.code(), Some(2));
}

#[test]
fn workers_flag_does_not_change_output() {
    let a = mofs(&["--workers", "1", "fvalue", "--n", "4", "--types", "1,2"]);
    let b = Command::new(env!("CARGO_BIN_EXE_mofs"))
        .args(["fvalue", "--n", "4", "--types", "1,2"])
        .env("MOFS_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
}
