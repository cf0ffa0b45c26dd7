//! CLI-level checks, including acceptance criterion 8: cold runs of the
//! satake command must produce byte-identical JSON regardless of the
//! worker count.

use std::process::Command;

fn hecke() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
}

#[test]
fn acceptance_criterion_8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("jobs1.json");
    let out4 = dir.path().join("jobs4.json");
    for (jobs, out, cache) in [("1", &out1, "c1"), ("4", &out4, "c4")] {
        let status = hecke()
            .args(["satake", "--datum", "A1~", "--bound", "7", "--json", "--jobs", jobs])
            .arg("--out")
            .arg(out)
            .arg("--cache-dir")
            .arg(dir.path().join(cache))
            .status()
            .unwrap();
        assert!(status.success(), "satake run with --jobs {jobs} failed");
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b4 = std::fs::read(&out4).unwrap();
    let ok = b1 == b4;
    println!(
        "criterion 8 (determinism across --jobs): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "cold --jobs 1 and --jobs 4 runs differ");
}

#[test]
fn exit_codes() {
    // Success.
    let s = hecke().args(["datum", "--datum", "A2~"]).output().unwrap();
    assert_eq!(s.status.code(), Some(0));
    // Config errors exit 2.
    let s = hecke().args(["datum", "--datum", "Z9"]).output().unwrap();
    assert_eq!(s.status.code(), Some(2));
    let s = hecke()
        .args(["datum", "--datum", "A2~", "--fold", "0,2,1", "--weights", "1,1,1"])
        .output()
        .unwrap();
    assert_eq!(s.status.code(), Some(2));
    // Satake on a finite datum is a config error.
    let s = hecke().args(["satake", "--datum", "A2"]).output().unwrap();
    assert_eq!(s.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_from_cli() {
    for suite in ["r-recursion", "41c", "sl2"] {
        let out = hecke()
            .args(["verify", "--datum", "A2~", "--bound", "6", "--suite", suite])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "suite {suite} failed");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("PASS"), "suite {suite}: {text}");
    }
    // The r-recursion report must state the adopted orientation.
    let out = hecke()
        .args(["verify", "--datum", "A2~", "--suite", "r-recursion"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("adopted orientation"));
    // Unknown suite is a config error.
    let out = hecke()
        .args(["verify", "--datum", "A2~", "--suite", "nope"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn warm_cache_reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = || {
        let out = hecke()
            .args(["kl", "--datum", "A1~", "--bound", "9", "--cutoff", "9"])
            .arg("--cache-dir")
            .arg(&cache)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8_lossy(&out.stdout).to_string()
    };
    let cold = run();
    assert!(cold.contains("cache: cold"));
    let table: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(table.len(), 1);
    let path = table[0].as_ref().unwrap().path();
    let bytes_cold = std::fs::read(&path).unwrap();
    let warm = run();
    assert!(warm.contains("cache: warmed"));
    assert_eq!(std::fs::read(&path).unwrap(), bytes_cold);
}
