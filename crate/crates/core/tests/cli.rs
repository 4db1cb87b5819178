use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::time::Duration;

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_supercong"));
    cmd.env_remove("SUPERCONG_OUTPUT_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn records(path: &Path) -> Vec<Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("micros");
            v
        })
        .collect()
}

#[test]
fn theorem1_small_range_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = run(&["verify", "--statement", "theorem1", "--pmax", "50", "--x", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = records(&out);
    assert_eq!(recs.len(), 14);
    assert!(recs.iter().all(|r| r["pass"] == true));
    assert_eq!(recs[0]["modulus"], "9");
}

#[test]
fn usage_and_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let out = out.to_str().unwrap();
    let bad_suite = dir.path().join("bad.toml");
    fs::write(&bad_suite, "schema_version = 1\nstatements = [\"theorem1\"]\nprime_max = 2\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--statement", "theorem9", "--out", out],
        vec!["verify", "--statement", "theorem1", "--pmin", "50", "--pmax", "10", "--out", out],
        vec!["verify", "--statement", "theorem1", "--x", "1/-2", "--out", out],
        vec!["verify", "--statement", "theorem1", "--oracle", "sometimes", "--out", out],
        vec!["verify", "--suite", bad_suite.to_str().unwrap()],
        vec!["verify", "--suite", "/nonexistent/suite.toml"],
        vec!["verify"],
        vec!["frobnicate"],
    ];
    for args in cases {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let o = run(&[
            "verify", "--statement", "theorem2", "--statement", "sun-s", "--pmax", "60", "--x-integers", "5",
            "--x-random", "4", "--seed", "9", "--jobs", jobs, "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(records(&a), records(&b));
}

#[test]
fn shorter_runs_are_prefixes() {
    let dir = tempfile::tempdir().unwrap();
    let short = dir.path().join("short.jsonl");
    let long = dir.path().join("long.jsonl");
    for (path, pmax) in [(&short, "40"), (&long, "90")] {
        run(&["verify", "--statement", "theorem1", "--pmax", pmax, "--x-integers", "3", "--out", path.to_str().unwrap()]);
    }
    let (s, l) = (records(&short), records(&long));
    assert!(!s.is_empty() && s.len() < l.len());
    assert_eq!(s[..], l[..s.len()]);
}

#[test]
fn interrupted_log_is_a_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let partial = dir.path().join("partial.jsonl");
    let full = dir.path().join("full.jsonl");
    let args = ["verify", "--statement", "theorem1", "--statement", "theorem2", "--pmax", "300", "--x-integers", "20", "--oracle", "off", "--jobs", "1"];
    let mut child = bin()
        .args(args)
        .args(["--out", partial.to_str().unwrap()])
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    std::thread::sleep(Duration::from_millis(300));
    let _ = child.kill();
    child.wait().unwrap();
    let o = bin().args(args).args(["--out", full.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));

    let text = fs::read_to_string(&partial).unwrap_or_default();
    let complete: Vec<Value> = text
        .split_inclusive('\n')
        .filter(|l| l.ends_with('\n'))
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("micros");
            v
        })
        .collect();
    let full = records(&full);
    assert!(complete.len() <= full.len());
    assert_eq!(complete[..], full[..complete.len()]);
}

#[test]
fn offset_injection_fails_with_pinpointing_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = run(&[
        "verify", "--statement", "theorem1", "--pmin", "13", "--pmax", "13", "--x=-1/4", "--rhs-offset", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("FAIL theorem1 p=13 x=-1/4"), "{stderr}");
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["pass"], false);
    let lhs: i64 = recs[0]["lhs"].as_str().unwrap().parse().unwrap();
    let rhs: i64 = recs[0]["rhs"].as_str().unwrap().parse().unwrap();
    assert_eq!((rhs - lhs).rem_euclid(169), 13);
}

#[test]
fn suite_file_and_output_dir_env() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.toml");
    fs::write(
        &suite,
        "schema_version = 1\nstatements = [\"conjecture\", \"kw\"]\nprime_max = 23\noracle_mode = \"full\"\n",
    )
    .unwrap();
    let o = bin()
        .args(["verify", "--suite", suite.to_str().unwrap(), "--format", "tap"])
        .env("SUPERCONG_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let tap = String::from_utf8(o.stdout).unwrap();
    assert!(tap.starts_with("TAP version 13\n1.."));
    assert!(tap.contains("ok 1 - conj-half p=3 x=-1/2\n"));
    assert!(tap.contains("# SKIP"));
    assert!(!tap.contains("not ok"));
    let recs = records(&dir.path().join("results.jsonl"));
    assert_eq!(recs.len(), 4 * 8 + 8);
}

#[test]
fn weighted_statement_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let out = out.to_str().unwrap();
    let ok = run(&["verify", "--statement", "weighted", "--weight", "8,5", "--expect-p", "2", "--x=-1/2", "--pmax", "40", "--out", out]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let wrong = run(&["verify", "--statement", "weighted", "--weight", "8,5", "--expect-p", "3", "--x=-1/2", "--pmax", "40", "--out", out]);
    assert_eq!(wrong.status.code(), Some(1));
    let missing = run(&["verify", "--statement", "weighted", "--out", out]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn identities_subcommand() {
    let o = run(&["identities", "--nmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("ok ") || l.starts_with("   ")), "{text}");
    assert!(text.contains("binomial-convolution"));
}
