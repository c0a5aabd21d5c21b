// The binary end to end: exit statuses, report files, determinism.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zeta-shift"))
}

fn table(n: usize) -> String {
    zerogen::cached_table(n).unwrap().to_str().unwrap().to_string()
}

fn read_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path).unwrap().lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn lemmas_without_zeros_reports_the_identities() {
    let out = tempfile::tempdir().unwrap();
    let st = bin().args(["lemmas", "--out"]).arg(out.path()).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let rows = read_rows(&out.path().join("lemmas.csv"));
    assert_eq!(rows[0][..5], ["lemma_id", "params", "residual", "threshold", "pass"]);
    let ids: Vec<&str> = rows[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["2.3", "2.4", "2.5", "2.6", "2.7"]);
    assert!(rows[1..].iter().all(|r| r[4] == "true"));
}

#[test]
fn zeros_stat_rows_carry_digest_and_config() {
    let out = tempfile::tempdir().unwrap();
    let path = table(1000);
    let st = bin().args(["zeros-stat", "--zeros", &path, "--out"]).arg(out.path()).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let rows = read_rows(&out.path().join("zeros_stat.csv"));
    let n = rows[0].len();
    assert_eq!(rows[0][n - 2..], ["zeros_sha256", "config"]);
    assert_eq!(rows[1][n - 2], zeta_shift::fetch::sha256_file(&path).unwrap());
    assert_eq!(rows[1][0], "1000");
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let path = table(1500);
    let run = || {
        let out = tempfile::tempdir().unwrap();
        let st = bin()
            .args(["theorem2", "--zeros", &path, "--h", "0.5,1", "--prime-limit", "100000", "--out"])
            .arg(out.path())
            .status()
            .unwrap();
        assert_eq!(st.code(), Some(0));
        fs::read(out.path().join("theorem2.csv")).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn exit_statuses() {
    let out = tempfile::tempdir().unwrap();
    // missing --zeros, bad flag value: usage
    let st = bin().args(["moment", "--out"]).arg(out.path()).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = bin().args(["lemmas", "--pair-mode", "sideways"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
    // malformed table: data error
    let bad = out.path().join("bad.txt");
    fs::write(&bad, "14.13\nnot a number\n").unwrap();
    let st = bin().args(["zeros-stat", "--zeros"]).arg(&bad).arg("--out").arg(out.path()).status().unwrap();
    assert_eq!(st.code(), Some(3));
    // checksum mismatch on fetch
    let src = table(1000);
    let st = bin()
        .args(["fetch", "--url", &src, "--sha256", &"0".repeat(64), "--dest"])
        .arg(out.path().join("data"))
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(3));
    assert!(!out.path().join("data").join("zeros.txt").exists());
}

#[test]
fn fetch_accepts_the_right_checksum() {
    let out = tempfile::tempdir().unwrap();
    let src = table(1000);
    let digest = zeta_shift::fetch::sha256_file(&src).unwrap();
    let dest = out.path().join("data");
    let st = bin().args(["fetch", "--url", &src, "--sha256", &digest, "--dest"]).arg(&dest).args(["--name", "z.txt"]).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert_eq!(fs::read(dest.join("z.txt")).unwrap(), fs::read(&src).unwrap());
}
