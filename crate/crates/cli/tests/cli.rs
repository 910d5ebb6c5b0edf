use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn beauville(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_beauville")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_a5_squared() {
    let dir = tempfile::tempdir().unwrap();
    let o = beauville(&["invariants", "--order", "3600", "--type", "5,6,5,15,10,15"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("g1=781 g2=1381 e=1196 chi=299"));
    let bad = beauville(&["invariants", "--order", "100", "--type", "5,6,5,15,10,15"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (family, params) in [
        ("mathieu_double", "A5xA5"),
        ("suzuki", "3"),
        ("alt_coprime", "6"),
        ("sym_double", "7"),
        ("product_double", "suzuki:3"),
    ] {
        let o = beauville(&["construct", "--family", family, "--params", params, "--out", "s.json"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{family} {params}: {}", stdout(&o));
        let v = beauville(&["verify", "s.json"], dir.path());
        assert_eq!(v.status.code(), Some(0), "{family} {params}: {}", stdout(&v));
        assert!(stdout(&v).contains("overall: PASS"));
    }
}

#[test]
fn construct_pipes_into_verify() {
    let dir = tempfile::tempdir().unwrap();
    let c = beauville(&["construct", "--family", "abelian", "--params", "5"], dir.path());
    assert_eq!(c.status.code(), Some(0));
    let mut v = Command::new(env!("CARGO_BIN_EXE_beauville"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    v.stdin.take().unwrap().write_all(&c.stdout).unwrap();
    let out = v.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn printed_data_that_fails_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "--family", "sym_double", "--params", "5", "--out", "s.json"];
    let o = beauville(&args, dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("discrepancy in printed data"));
    assert!(stdout(&o).contains("emitted: derived data"));
    let o = beauville(&[&args[..], &["--printed"]].concat(), dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(beauville(&["verify", "s.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn search_a5_and_an_abelian_group() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("A5.json"),
        r#"{"kind":"permutation","degree":5,"generators":["(1,2,3)","(1,2,3,4,5)"]}"#,
    )
    .unwrap();
    let o = beauville(&["search", "--group", "A5.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("no Beauville structure (exhaustive"));

    fs::write(
        dir.path().join("z5.json"),
        r#"{"kind":"permutation","degree":10,"generators":["(1,2,3,4,5)","(6,7,8,9,10)"]}"#,
    )
    .unwrap();
    let o = beauville(&["search", "--group", "z5.json", "--strongly-real"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("witness: PASS"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "--family", "alt_power", "--params", "11,1", "--out", "s.json"];
    let a = beauville(&args, dir.path());
    let fa = fs::read(dir.path().join("s.json")).unwrap();
    let b = beauville(&args, dir.path());
    let fb = fs::read(dir.path().join("s.json")).unwrap();
    assert_eq!((a.stdout, fa), (b.stdout, fb));
}

#[test]
fn usage_and_io_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| beauville(args, dir.path()).status.code();
    assert_eq!(code(&["verify", "missing.json"]), Some(4));
    assert_eq!(code(&["construct", "--family", "nope"]), Some(4));
    assert_eq!(code(&["construct", "--family", "suzuki", "--params", "4"]), Some(4));
    assert_eq!(code(&["invariants", "--order", "10", "--type", "1,2"]), Some(4));
    assert_eq!(code(&["-h"]), Some(4));
    assert_eq!(code(&["--help"]), Some(0));
    fs::write(dir.path().join("bad.json"), "{").unwrap();
    let o = beauville(&["verify", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
}

#[test]
fn atlas_verify_reads_generator_files() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("gens.txt"), "degree 5\n(1,2)\n(1,2,3,4,5)\n").unwrap();
    // not standard generators for M12:2: the run completes and reports failures
    let o = beauville(&["atlas-verify", "--group", "M12:2", "--gens", "gens.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("order: FAIL"));
    let o = beauville(&["atlas-verify", "--group", "HN:2", "--gens", "gens.txt"], dir.path());
    assert!(stdout(&o).contains("Commutator reading") && stdout(&o).contains("Grouping reading"));
    assert_eq!(beauville(&["atlas-verify", "--group", "M24", "--gens", "gens.txt"], dir.path()).status.code(), Some(4));
    fs::write(dir.path().join("one.txt"), "(1,2)\n").unwrap();
    assert_eq!(
        beauville(&["atlas-verify", "--group", "M12:2", "--gens", "one.txt"], dir.path()).status.code(),
        Some(4)
    );
}
